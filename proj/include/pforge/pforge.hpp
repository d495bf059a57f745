// Copyright 2026 The pforge Authors
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

#ifndef PFORGE_PFORGE_HPP
#define PFORGE_PFORGE_HPP

#include "curve.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "intpoly.hpp"
#include "numtheory.hpp"
#include "pell.hpp"
#include "record.hpp"
#include "record_io.hpp"
#include "search.hpp"

#endif
