// Copyright 2026 The Sodium Scout Authors
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

// Everything except the HTTP service (include sodium_scout/service.hpp for
// that; it pulls in cpp-httplib and needs a threads library).

#pragma once

#include "sodium_scout/catalog.hpp"
#include "sodium_scout/context_filters.hpp"
#include "sodium_scout/engine.hpp"
#include "sodium_scout/error.hpp"
#include "sodium_scout/geo.hpp"
#include "sodium_scout/json_io.hpp"
#include "sodium_scout/physio.hpp"
#include "sodium_scout/ranking.hpp"
#include "sodium_scout/time.hpp"
