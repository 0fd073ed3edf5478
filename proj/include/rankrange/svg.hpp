// Copyright 2026 The rankrange Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "rankrange/numrange.hpp"

namespace rankrange::svg {

/// Static SVG rendering of range geometry: for unitary data the unit
/// circle, spectrum points, construction chords, and the range point or
/// segment; for Hermitian data a number line with spectrum ticks and the
/// range interval.
std::string render_plot(const RangePlotData& data);

}  // namespace rankrange::svg
