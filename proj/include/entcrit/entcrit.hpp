// Copyright 2026 The entcrit Authors
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

#include "entcrit/operator_algebra.hpp"
#include "entcrit/loo_basis.hpp"
#include "entcrit/schmidt_realign.hpp"
#include "entcrit/criteria.hpp"
#include "entcrit/nonlinear_witness.hpp"
#include "entcrit/states.hpp"
#include "entcrit/scan.hpp"
