// include/arraybench/tensor_io.h

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

#ifndef ARRAYBENCH_TENSOR_IO_H_
#define ARRAYBENCH_TENSOR_IO_H_

#include <cstdint>
#include <string>
#include <vector>

namespace arraybench {

// Debug tensor file: "ABTF" magic, uint32 ndim, uint32 dims[ndim],
// float64 values in row-major order, all little-endian.
void write_tensor(const std::string& path, const std::vector<uint32_t>& dims,
                  const std::vector<double>& values);

struct Tensor {
  std::vector<uint32_t> dims;
  std::vector<double> values;
};

Tensor read_tensor(const std::string& path);

}  // namespace arraybench

#endif  // ARRAYBENCH_TENSOR_IO_H_
