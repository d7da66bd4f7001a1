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

#include "otfst/alphabet.hpp"
#include "otfst/fsm.hpp"
#include "otfst/algebra.hpp"
#include "otfst/apply.hpp"
#include "otfst/att.hpp"
#include "otfst/expr.hpp"
#include "otfst/parser.hpp"
#include "otfst/macros.hpp"
#include "otfst/replace.hpp"
#include "otfst/optimality.hpp"
#include "otfst/compiler.hpp"
#include "otfst/functional.hpp"
#include "otfst/grammar.hpp"
#include "otfst/grammars.hpp"
#include "otfst/exactness.hpp"
