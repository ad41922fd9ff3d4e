// Copyright 2026 The connperim Authors.
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

#pragma once

#include "connperim/check.hpp"
#include "connperim/decomposition.hpp"
#include "connperim/fixtures.hpp"
#include "connperim/gamow.hpp"
#include "connperim/io.hpp"
#include "connperim/pixel_set.hpp"
#include "connperim/planar_set.hpp"
#include "connperim/relaxed.hpp"
#include "connperim/steiner.hpp"
#include "connperim/svg.hpp"
