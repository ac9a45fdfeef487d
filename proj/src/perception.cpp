// perception.cpp — local perception operators

#include "seadyn/perception.hpp"

#include "seadyn/errors.hpp"

#include <sstream>

namespace seadyn {

PerceptionFrame::PerceptionFrame(const DensityMatrix& rho, const CompositeStructure& s,
                                 std::size_t j)
    : structure_(s), j_(j) {
    s.check_index(j);
    if (rho.dim() != s.total_dim()) {
        std::ostringstream os;
        os << "perception: state dimension " << rho.dim() << " does not match structure dimension "
           << s.total_dim();
        throw ConfigError(os.str());
    }
    const std::size_t only_j[] = {j};
    const auto rest = s.complement(j);
    rho_j_ = partial_trace(rho.matrix(), s, rest);
    rho_rest_ = partial_trace(rho.matrix(), s, only_j);
    weight_ = embed(rho_rest_, s, rest);
}

Matrix PerceptionFrame::perceive(const Matrix& x) const {
    const auto d = static_cast<Eigen::Index>(structure_.total_dim());
    if (x.rows() != d || x.cols() != d) {
        std::ostringstream os;
        os << "perceive: observable is " << x.rows() << "x" << x.cols() << ", expected " << d << "x"
           << d;
        throw ConfigError(os.str());
    }
    if (!is_hermitian(x, 1e-10)) throw ConfigError("perceive: observable must be Hermitian");
    const std::size_t only_j[] = {j_};
    return hermitian_part(partial_trace_keep(weight_ * x, structure_, only_j));
}

double PerceptionFrame::mean(const Matrix& perceived) const {
    return real_trace_product(rho_j_, perceived);
}

Matrix PerceptionFrame::deviation_of(const Matrix& perceived) const {
    Matrix out = perceived;
    out.diagonal().array() -= mean(perceived);
    return out;
}

double PerceptionFrame::covariance_of(const Matrix& dx, const Matrix& dy) const {
    return 0.5 * real_trace_product(rho_j_, anticommutator(dx, dy));
}

PerceptionResult perceive(const Matrix& x, const DensityMatrix& rho, const CompositeStructure& s,
                          std::size_t j, std::string source_label) {
    PerceptionFrame frame(rho, s, j);
    return {frame.perceive(x), j, std::move(source_label)};
}

Matrix deviation(const Matrix& x, const DensityMatrix& rho, const CompositeStructure& s,
                 std::size_t j) {
    return PerceptionFrame(rho, s, j).deviation(x);
}

double covariance(const Matrix& x, const Matrix& y, const DensityMatrix& rho,
                  const CompositeStructure& s, std::size_t j) {
    return PerceptionFrame(rho, s, j).covariance(x, y);
}

PerceptionResult perceived_entropy_operator(const DensityMatrix& rho, const CompositeStructure& s,
                                            std::size_t j, double k_boltzmann, double eps_bln) {
    PerceptionFrame frame(rho, s, j);
    return {frame.perceive(-k_boltzmann * matrix_bln(rho, eps_bln)), j, "S(rho)"};
}

} // namespace seadyn
