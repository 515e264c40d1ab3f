#include "turinv/model.hpp"

namespace turinv {

std::string to_string(Model m) {
    return m == Model::Model1 ? "1" : "2";
}

Model model_from_int(int v) {
    if (v == 1) return Model::Model1;
    if (v == 2) return Model::Model2;
    throw ModelError("model must be 1 or 2");
}

void ModelParams::validate() const {
    if (!(d_n > 0.0)) throw ModelError("d_n must be positive");
    if (!(d_c > 0.0)) throw ModelError("d_c must be positive");
    if (!(chi0 > 0.0)) throw ModelError("chi0 must be positive");
    if (!(r > 0.0)) throw ModelError("r must be positive");
    if (!(k > 0.0)) throw ModelError("k must be positive");
}

}  // namespace turinv
