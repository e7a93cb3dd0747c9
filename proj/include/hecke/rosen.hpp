/*
   Copyright 2025 The hecke-cf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef HECKE_ROSEN_HPP
#define HECKE_ROSEN_HPP

#include <string>
#include <vector>

#include "hecke/cf.hpp"

namespace hecke {

struct RosenDigit {
    int eps = 1;
    Digit r = 1;

    friend bool operator==(const RosenDigit& a, const RosenDigit& b) = default;
};

/* [r0; (e1:r1), (e2:r2), ...] with an optional periodic tail. */
struct RosenExpansion {
    int q = 4;
    Digit r0 = 0;
    std::vector<RosenDigit> digits;
    std::vector<RosenDigit> period;
    bool truncated = false;
    /* Set for q = 3, where the correspondence is only formal. */
    bool formal = false;

    bool periodic() const { return !period.empty(); }
    RosenDigit digit(std::size_t i) const;
    std::string str() const;

    friend bool operator==(const RosenExpansion& a, const RosenExpansion& b);
};

RosenExpansion parse_rosen(const std::string& s, int q);

RosenExpansion to_rosen(const CFExpansion& e);
CFExpansion from_rosen(const RosenExpansion& r);

/* Value of the Rosen fraction read directly from its continued fraction form. */
Real rosen_value(const RosenExpansion& r);

struct ReducedReport {
    bool reduced = true;
    std::vector<int> violated;    // clause numbers 1..4
    std::vector<std::size_t> at;  // digit position of each violation
    bool ambiguous = false;       // finite tail with value +-lambda/2
};

ReducedReport is_reduced(const RosenExpansion& r);

}  // namespace hecke

#endif
