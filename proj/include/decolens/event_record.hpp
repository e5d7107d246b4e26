#pragma once

namespace decolens {

// One scattering event: time, sampled zero-phase position, signed momentum
// transfer and the phase actually used.
struct EventRecord {
    double t = 0.0;
    double x0 = 0.0;
    double kappa = 0.0;
    double phi = 0.0;
};

}  // namespace decolens
