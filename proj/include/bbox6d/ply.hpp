// Copyright 2026 The bbox6d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BBOX6D_PLY_HPP_
#define BBOX6D_PLY_HPP_

#include <iosfwd>
#include <string>

#include "bbox6d/camera.hpp"

namespace bbox6d {

/// Reads the x, y, z vertex properties of an ASCII PLY file in file order.
/// Faces and extra properties are skipped.
///
/// Throws kParseError (with line number) on malformed input,
/// kUnsupportedFormat for binary PLY and kInvalidInput for an empty cloud.
PointCloudd ReadPly(std::istream& in);
PointCloudd LoadPly(const std::string& path);

/// ASCII PLY with 17 significant digits, so LoadPly(SavePly(c)) == c.
void WritePly(std::ostream& out, const PointCloudd& cloud);
void SavePly(const std::string& path, const PointCloudd& cloud);

}  // namespace bbox6d

#endif  // BBOX6D_PLY_HPP_
