#ifndef FLATBAND_SCREEN_HPP
#define FLATBAND_SCREEN_HPP

#include "flatband/floquet.hpp"

#include <string>
#include <vector>

namespace flatband {

// Fast nu=2 no-flat-band screen (unit weights, zero potential): the degree
// identity per axis, the |I12| = 1 and empty-diagonal certificates, and the
// intersection of the two closed-form candidate values.  A surviving candidate
// still needs the exact detector to confirm.
struct ScreenResult {
    bool certified_no_flat_band = false;
    std::string certificate;               // which condition fired
    std::vector<RealValue> candidates;     // at most one integer candidate
};

ScreenResult screen_nu2(const PeriodicGraph& g);
std::string screen_result_to_string(const ScreenResult& r);

}  // namespace flatband

#endif
