// Copyright 2026 The gda Authors
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

#include "gda/boundary1d.hpp"
#include "gda/csv.hpp"
#include "gda/datagen.hpp"
#include "gda/discriminant.hpp"
#include "gda/error.hpp"
#include "gda/estimation.hpp"
#include "gda/experiment.hpp"
#include "gda/gaussian.hpp"
#include "gda/grid.hpp"
#include "gda/linalg.hpp"
#include "gda/mixture.hpp"
#include "gda/serialize.hpp"
#include "gda/subspace.hpp"
