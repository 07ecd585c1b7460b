#include "burgers/controllers.hpp"

namespace burgers {

std::string to_string(ControllerFamily f) {
    switch (f) {
        case ControllerFamily::none: return "none";
        case ControllerFamily::modal: return "modal";
        case ControllerFamily::volume: return "volume";
    }
    return "?";
}

Feedback::Feedback(const ControllerSpec& spec, GridSpec grid) : spec_(spec), grid_(grid) {
    spec_.validate();
    if (spec_.family == ControllerFamily::modal) {
        basis_ = std::make_shared<const ModalBasis>(grid, spec_.count);
    } else if (spec_.family == ControllerFamily::volume) {
        // touch the resolution precondition once, up front
        volume_averages(GridField(grid), VolumePartition(spec_.count));
    }
}

GridField Feedback::operator()(const GridField& z) const {
    if (!(z.grid == grid_)) throw ShapeError("Feedback: grid mismatch");
    switch (spec_.family) {
        case ControllerFamily::none:
            return GridField(grid_);
        case ControllerFamily::modal: {
            auto c = basis_->coeffs(z);
            for (auto& ck : c) ck *= -spec_.mu;
            return basis_->reconstruct(c);
        }
        case ControllerFamily::volume: {
            const VolumePartition part(spec_.count);
            auto avgs = volume_averages(z, part);
            for (auto& a : avgs) a *= -spec_.mu;
            return piecewise_reconstruct(avgs, part, grid_);
        }
    }
    return GridField(grid_);
}

GridField modal_feedback(const GridField& z, const ControllerSpec& spec) {
    if (spec.family != ControllerFamily::modal)
        throw std::invalid_argument("modal_feedback: spec family is not modal");
    return Feedback(spec, z.grid)(z);
}

GridField volume_feedback(const GridField& z, const ControllerSpec& spec) {
    if (spec.family != ControllerFamily::volume)
        throw std::invalid_argument("volume_feedback: spec family is not volume");
    return Feedback(spec, z.grid)(z);
}

GridField apply_feedback(const GridField& z, const ControllerSpec& spec) {
    return Feedback(spec, z.grid)(z);
}

}  // namespace burgers
