#ifndef SLSEM_BASIS_HPP
#define SLSEM_BASIS_HPP

#include <string>
#include <vector>

#include "linalg.hpp"

namespace slsem {

enum class NodeKind { Chebyshev, Uniform, SymmetricAlpha };

std::string toString(NodeKind kind);

// Node distribution on the element-centered reference interval [-1/2, 1/2].
// d_min is the dimensionless minimum spacing: the smallest of the consecutive
// node gaps and the two node-to-edge distances.
struct NodeSet {
    int degree = 0;
    NodeKind kind = NodeKind::Chebyshev;
    double alpha = 0.0;          // only meaningful for SymmetricAlpha
    std::vector<double> nodes;   // chi_0 < chi_1 < ... < chi_P, inside (-1/2, 1/2)
    double dMin = 0.0;

    std::size_t count() const { return nodes.size(); }
};

// Builds the node set. Chebyshev: chi_m = -cos((m+1/2)pi/(P+1))/2.
// Uniform: chi_m = (m+1)/(P+2) - 1/2. SymmetricAlpha (P=1 only): {-alpha, alpha}.
NodeSet makeNodes(int degree, NodeKind kind, double alpha = 0.0);

// entry[r][j] = points[r]^j for j = 0..width-1.
Matrix vandermonde(const std::vector<double>& points, std::size_t width);

// Horner evaluation of sum_m coeffs[m] * chi^m.
double evalMonomial(const std::vector<double>& coeffs, double chi);

} // namespace slsem

#endif
