// =============================================================================
// params.cpp
// =============================================================================
#include "wfsp/params.hpp"

#include <cmath>
#include <stdexcept>

namespace wfsp {

void ModelParams::validate() const {
    if (sigma < 1.0) throw std::invalid_argument("sigma must be >= 1");
    if (ell < 1) throw std::invalid_argument("ell must be >= 1");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (kappa < 2) throw std::invalid_argument("kappa must be >= 2");
    const double qmax = 1.0 - 1.0 / kappa;
    if (q < 0.0 || q >= qmax) {
        throw std::invalid_argument("q must lie in [0, 1 - 1/kappa)");
    }
}

void to_json(nlohmann::json& j, const ModelParams& p) {
    j = nlohmann::json{{"sigma", p.sigma},
                       {"ell", p.ell},
                       {"m", p.m},
                       {"kappa", p.kappa},
                       {"q", p.q}};
}

void from_json(const nlohmann::json& j, ModelParams& p) {
    j.at("sigma").get_to(p.sigma);
    j.at("ell").get_to(p.ell);
    j.at("m").get_to(p.m);
    j.at("kappa").get_to(p.kappa);
    j.at("q").get_to(p.q);
    p.validate();
}

double RateParams::ea() const noexcept { return std::exp(-a); }

void RateParams::validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("a must be > 0");
    if (sigma < 1.0) throw std::invalid_argument("sigma must be >= 1");
    if (kappa < 2) throw std::invalid_argument("kappa must be >= 2");
}

}  // namespace wfsp
