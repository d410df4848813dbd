#ifndef FAREY_QUADRATURE_HPP
#define FAREY_QUADRATURE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace farey {

class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// M-point generalized Gauss-Laguerre rule for the weight t^alpha e^{-t}.
///
/// Nodes are strictly increasing. Weights of nodes beyond roughly t = 700
/// underflow binary64 and are stored as 0; they carry less than 1e-300 of
/// the total mass Gamma(alpha + 1).
struct QuadratureRule {
    double alpha = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t order() const { return nodes.size(); }
};

/// Largest supported rule order.
inline constexpr std::size_t kMaxQuadratureOrder = 512;

/// Builds the rule from the Jacobi matrix (diagonal 2i+alpha+1, off-diagonal
/// sqrt(i(i+alpha))). Eigenvalues come from implicit QL with Wilkinson
/// shifts, are then Newton-polished on L_M^alpha, and the weights are taken
/// from Gamma(M+alpha+1) t / (M! (M+alpha)^2 L_{M-1}(t)^2) in log space.
///
/// Throws std::domain_error when order is 0 or > kMaxQuadratureOrder or
/// alpha <= -1, and QuadratureError when QL needs more than 50 sweeps for
/// one eigenvalue.
QuadratureRule gauss_laguerre(std::size_t order, double alpha);

/// Eigenvalues of a symmetric tridiagonal matrix in ascending order.
/// `diagonal` has n entries, `offdiagonal` n-1 (entry i couples i and i+1).
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diagonal,
                                            std::vector<double> offdiagonal,
                                            int max_sweeps = 50);

}  // namespace farey

#endif  // FAREY_QUADRATURE_HPP
