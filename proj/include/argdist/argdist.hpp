// Copyright 2026 The argdist Authors.
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

// Umbrella header for the argdist library.

#pragma once

#include "argdist/annotate.hpp"
#include "argdist/antonymy.hpp"
#include "argdist/config.hpp"
#include "argdist/corpus.hpp"
#include "argdist/error.hpp"
#include "argdist/extract.hpp"
#include "argdist/parallel.hpp"
#include "argdist/pipeline.hpp"
#include "argdist/similarity.hpp"
#include "argdist/text.hpp"
#include "argdist/vectors.hpp"
