// src/tensor_io.cc

// Copyright 2026  arraybench authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "arraybench/tensor_io.h"

#include <fstream>

#include "arraybench/common.h"

namespace arraybench {

void write_tensor(const std::string& path, const std::vector<uint32_t>& dims,
                  const std::vector<double>& values) {
  size_t expected = 1;
  for (uint32_t d : dims) expected *= d;
  if (expected != values.size()) fail("tensor-io", "dims do not match value count");

  std::ofstream f(path, std::ios::binary);
  if (!f) fail("tensor-io", "cannot open " + path);
  f.write("ABTF", 4);
  const uint32_t ndim = static_cast<uint32_t>(dims.size());
  f.write(reinterpret_cast<const char*>(&ndim), sizeof(ndim));
  f.write(reinterpret_cast<const char*>(dims.data()), ndim * sizeof(uint32_t));
  f.write(reinterpret_cast<const char*>(values.data()), values.size() * sizeof(double));
  if (!f) fail("tensor-io", "write failed: " + path);
}

Tensor read_tensor(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail("tensor-io", "cannot open " + path);
  char magic[4];
  f.read(magic, 4);
  if (std::string(magic, 4) != "ABTF") fail("tensor-io", "bad magic in " + path);
  uint32_t ndim = 0;
  f.read(reinterpret_cast<char*>(&ndim), sizeof(ndim));
  Tensor t;
  t.dims.resize(ndim);
  f.read(reinterpret_cast<char*>(t.dims.data()), ndim * sizeof(uint32_t));
  size_t count = 1;
  for (uint32_t d : t.dims) count *= d;
  t.values.resize(count);
  f.read(reinterpret_cast<char*>(t.values.data()), count * sizeof(double));
  if (!f) fail("tensor-io", "truncated tensor file: " + path);
  return t;
}

}  // namespace arraybench
