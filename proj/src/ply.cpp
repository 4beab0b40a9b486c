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

#include "bbox6d/ply.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "bbox6d/error.hpp"

namespace bbox6d {

namespace {

struct Element {
  std::string name;
  long count = 0;
  std::vector<std::string> properties;
  bool has_list = false;
};

[[noreturn]] void Fail(long line, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> Tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

double ToDouble(const std::string& s, long line) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) Fail(line, "bad number '" + s + "'");
  return v;
}

}  // namespace

PointCloudd ReadPly(std::istream& in) {
  std::string text;
  long line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, text)) return false;
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    return true;
  };

  if (!next_line() || text != "ply") Fail(line_no, "missing 'ply' magic");

  std::vector<Element> elements;
  bool have_format = false;
  bool ended = false;
  while (next_line()) {
    const auto tok = Tokens(text);
    if (tok.empty()) continue;
    if (tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (tok.size() < 3) Fail(line_no, "malformed format line");
      if (tok[1] == "binary_little_endian" || tok[1] == "binary_big_endian") {
        throw Error(ErrorCode::kUnsupportedFormat,
                    "binary PLY is not supported (" + tok[1] + ")");
      }
      if (tok[1] != "ascii") Fail(line_no, "unknown format '" + tok[1] + "'");
      have_format = true;
    } else if (tok[0] == "element") {
      if (tok.size() != 3) Fail(line_no, "malformed element line");
      long count = 0;
      const auto [p, ec] =
          std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), count);
      if (ec != std::errc() || p != tok[2].data() + tok[2].size() || count < 0) {
        Fail(line_no, "bad element count '" + tok[2] + "'");
      }
      elements.push_back({tok[1], count, {}, false});
    } else if (tok[0] == "property") {
      if (elements.empty()) Fail(line_no, "property before any element");
      if (tok.size() >= 2 && tok[1] == "list") {
        if (tok.size() != 5) Fail(line_no, "malformed list property");
        elements.back().has_list = true;
        elements.back().properties.push_back(tok[4]);
      } else {
        if (tok.size() != 3) Fail(line_no, "malformed property line");
        elements.back().properties.push_back(tok[2]);
      }
    } else if (tok[0] == "end_header") {
      ended = true;
      break;
    } else {
      Fail(line_no, "unexpected header keyword '" + tok[0] + "'");
    }
  }
  if (!have_format) Fail(line_no, "missing format line");
  if (!ended) Fail(line_no, "missing end_header");

  const Element* vertex = nullptr;
  for (const auto& e : elements) {
    if (e.name == "vertex") vertex = &e;
  }
  if (vertex == nullptr) Fail(line_no, "no vertex element");
  if (vertex->has_list) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "list properties on vertices are not supported");
  }
  int ix = -1, iy = -1, iz = -1;
  for (int i = 0; i < static_cast<int>(vertex->properties.size()); ++i) {
    const auto& p = vertex->properties[static_cast<std::size_t>(i)];
    if (p == "x") ix = i;
    if (p == "y") iy = i;
    if (p == "z") iz = i;
  }
  if (ix < 0 || iy < 0 || iz < 0) Fail(line_no, "vertex lacks x, y or z");
  if (vertex->count == 0) {
    throw Error(ErrorCode::kInvalidInput, "PLY file has no vertices");
  }

  PointCloudd cloud(3, vertex->count);
  for (const auto& e : elements) {
    for (long i = 0; i < e.count; ++i) {
      if (!next_line()) Fail(line_no + 1, "unexpected end of file in " + e.name);
      if (&e != vertex) continue;
      const auto tok = Tokens(text);
      if (tok.size() != e.properties.size()) {
        Fail(line_no, "expected " + std::to_string(e.properties.size()) +
                          " values, got " + std::to_string(tok.size()));
      }
      cloud(0, i) = ToDouble(tok[static_cast<std::size_t>(ix)], line_no);
      cloud(1, i) = ToDouble(tok[static_cast<std::size_t>(iy)], line_no);
      cloud(2, i) = ToDouble(tok[static_cast<std::size_t>(iz)], line_no);
    }
  }
  ValidateCloud(cloud);
  return cloud;
}

PointCloudd LoadPly(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  return ReadPly(in);
}

void WritePly(std::ostream& out, const PointCloudd& cloud) {
  out << "ply\nformat ascii 1.0\nelement vertex " << cloud.cols()
      << "\nproperty double x\nproperty double y\nproperty double z\n"
         "end_header\n";
  char buf[96];
  for (Eigen::Index i = 0; i < cloud.cols(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", cloud(0, i),
                  cloud(1, i), cloud(2, i));
    out << buf;
  }
}

void SavePly(const std::string& path, const PointCloudd& cloud) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  WritePly(out, cloud);
}

}  // namespace bbox6d
