#include "basis.hpp"

#include <cmath>

namespace slsem {

std::string toString(NodeKind kind) {
    switch (kind) {
        case NodeKind::Chebyshev: return "chebyshev";
        case NodeKind::Uniform: return "uniform";
        case NodeKind::SymmetricAlpha: return "alpha";
    }
    return "?";
}

NodeSet makeNodes(int degree, NodeKind kind, double alpha) {
    if (degree < 0) throw InvalidArgumentError("invalid degree: P must be >= 0");
    NodeSet set;
    set.degree = degree;
    set.kind = kind;
    const std::size_t n = static_cast<std::size_t>(degree) + 1;
    set.nodes.resize(n);

    switch (kind) {
        case NodeKind::Chebyshev:
            for (std::size_t m = 0; m < n; ++m)
                set.nodes[m] = -0.5 * std::cos((static_cast<double>(m) + 0.5) * M_PI / static_cast<double>(n));
            if (degree == 0) set.nodes[0] = 0.0;  // exact center, not cos(pi/2) rounding
            break;
        case NodeKind::Uniform:
            for (std::size_t m = 0; m < n; ++m)
                set.nodes[m] = (static_cast<double>(m) + 1.0) / (static_cast<double>(degree) + 2.0) - 0.5;
            break;
        case NodeKind::SymmetricAlpha:
            if (degree != 1)
                throw InvalidArgumentError("kind/degree mismatch: symmetric-alpha nodes require P=1");
            if (!(alpha > 0.0 && alpha < 0.5))
                throw InvalidArgumentError("alpha out of range: must lie in (0, 1/2)");
            set.alpha = alpha;
            set.nodes = {-alpha, alpha};
            break;
    }

    double dMin = set.nodes.front() + 0.5;
    dMin = std::min(dMin, 0.5 - set.nodes.back());
    for (std::size_t m = 0; m + 1 < n; ++m)
        dMin = std::min(dMin, set.nodes[m + 1] - set.nodes[m]);
    set.dMin = dMin;
    return set;
}

Matrix vandermonde(const std::vector<double>& points, std::size_t width) {
    if (width == 0) throw InvalidArgumentError("vandermonde requires width >= 1");
    Matrix v(points.size(), width);
    for (std::size_t r = 0; r < points.size(); ++r) {
        double p = 1.0;
        for (std::size_t j = 0; j < width; ++j) {
            v(r, j) = p;
            p *= points[r];
        }
    }
    return v;
}

double evalMonomial(const std::vector<double>& coeffs, double chi) {
    if (coeffs.empty()) throw InvalidArgumentError("evalMonomial requires nonempty coefficients");
    double acc = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * chi + coeffs[j];
    return acc;
}

} // namespace slsem
