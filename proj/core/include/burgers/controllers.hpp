#ifndef BURGERS_CONTROLLERS_HPP
#define BURGERS_CONTROLLERS_HPP

#include <memory>
#include <string>

#include "burgers/spectral.hpp"

namespace burgers {

enum class ControllerFamily { none, modal, volume };

std::string to_string(ControllerFamily f);

/// Finite-dimensional feedback law applied to the master/follower difference:
/// modal:  -mu * sum_{k<=N} (z, w_k) w_k
/// volume: -mu * sum_{k<=N} zbar_k chi_{J_k}
struct ControllerSpec {
    ControllerFamily family = ControllerFamily::none;
    double mu = 0.0;
    int count = 1;  // N

    void validate() const {
        if (mu < 0.0) throw std::invalid_argument("ControllerSpec: gain mu must be >= 0");
        if (family != ControllerFamily::none && count < 1)
            throw std::invalid_argument("ControllerSpec: count must be >= 1");
    }
};

GridField modal_feedback(const GridField& z, const ControllerSpec& spec);
GridField volume_feedback(const GridField& z, const ControllerSpec& spec);

/// Either feedback family behind one call; family none yields a zero field.
GridField apply_feedback(const GridField& z, const ControllerSpec& spec);

/// Precomputed feedback operator for use inside time loops (caches the
/// sampled sine basis / partition index map). Produces bit-identical output
/// to the free functions.
class Feedback {
  public:
    Feedback(const ControllerSpec& spec, GridSpec grid);

    const ControllerSpec& spec() const { return spec_; }
    bool active() const { return spec_.family != ControllerFamily::none && spec_.mu > 0.0; }
    GridField operator()(const GridField& z) const;

  private:
    ControllerSpec spec_;
    GridSpec grid_;
    std::shared_ptr<const ModalBasis> basis_;  // modal family
};

}  // namespace burgers

#endif
