// Copyright 2026 The tou-sched Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "tousched/instance.hpp"

namespace tousched {

enum class Variety { many, few };
enum class Load { full, not_full };

struct GeneratorProfile {
    Variety variety = Variety::many;
    Load load = Load::full;
};

/// Parses "many-varieties,full-load", "few-varieties,not-full-load", ...
/// Throws Error(invalid_argument) on anything else.
GeneratorProfile parse_profile(std::string_view text);
std::string to_string(GeneratorProfile profile);

/// Synthetic production data on the reference 24 h tariff.
///
/// Variety controls the spread of width, gauge and hardness; load controls
/// total processing time relative to the horizon (full: 95.5-98.5 %,
/// not full: 82-88 %). Unit length bounds are 5/10 km with a 1 km
/// same-width limit when n is large enough to fill m units with short
/// slabs; smaller instances scale the length bounds down so units of
/// roughly n/m slabs stay feasible. Same seed, same instance.
ProblemInstance generate_instance(int slab_count, int unit_count, std::uint64_t seed, GeneratorProfile profile);

}  // namespace tousched
