// Copyright 2026 The sinrcap Authors
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

#include "sinrcap/admission.hpp"
#include "sinrcap/affectance.hpp"
#include "sinrcap/errors.hpp"
#include "sinrcap/formulations.hpp"
#include "sinrcap/greedy.hpp"
#include "sinrcap/harness.hpp"
#include "sinrcap/instance_io.hpp"
#include "sinrcap/logging.hpp"
#include "sinrcap/lp.hpp"
#include "sinrcap/model.hpp"
#include "sinrcap/oracle.hpp"
#include "sinrcap/random.hpp"
#include "sinrcap/rounding.hpp"
