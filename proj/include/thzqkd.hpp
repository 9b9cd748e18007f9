// SPDX-License-Identifier: Apache-2.0
// ------------------------------------------------------------------------
// thzqkd - secret key rate of RIS-assisted THz MIMO CV-QKD links
// Copyright (C) 2026 The thzqkd authors
// All rights reserved.
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
// ------------------------------------------------------------------------

#ifndef THZQKD_HPP
#define THZQKD_HPP

#include "thzqkd/channel_model.hpp"
#include "thzqkd/mode_decomposition.hpp"
#include "thzqkd/gaussian_qkd.hpp"
#include "thzqkd/oracle.hpp"
#include "thzqkd/config.hpp"
#include "thzqkd/experiments.hpp"
#include "thzqkd/csv.hpp"
#include "thzqkd/verify.hpp"

#endif
