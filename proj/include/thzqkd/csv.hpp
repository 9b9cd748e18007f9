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

#ifndef THZQKD_CSV_HPP
#define THZQKD_CSV_HPP

#include "experiments.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

namespace thzqkd
{
    // 12 significant digits, locale independent
    inline std::string csv_number(double x)
    {
        if (std::isnan(x))
            return "nan";
        if (std::isinf(x))
            return x > 0 ? "inf" : "-inf";
        char buf[64];
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
        return std::string(buf, p);
    }

    inline std::string csv_text(const std::string &s)
    {
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string o = "\"";
        for (char c : s)
        {
            if (c == '"')
                o += '"';
            o += c == '\n' ? ' ' : c;
        }
        return o + "\"";
    }

    inline std::string csv_header(const SweepResult &r)
    {
        std::string h = variable_column(r.variable);
        for (AncillaCase c : r.cases)
            h += std::string(",skr_") + case_tag(c);
        for (AncillaCase c : r.cases)
            h += std::string(",holevo_") + case_tag(c);
        h += ",clamp_warnings,sub_vacuum_warnings,error\n";
        return h;
    }

    inline void write_csv(const SweepResult &r, std::ostream &out)
    {
        out << csv_header(r);
        for (const auto &row : r.rows)
        {
            std::string line = csv_number(row.value);
            const bool ok = row.reports.size() == r.cases.size();
            for (std::size_t i = 0; i < r.cases.size(); ++i)
                line += "," + (ok ? csv_number(row.reports[i].total_skr) : std::string("nan"));
            for (std::size_t i = 0; i < r.cases.size(); ++i)
                line += "," + (ok ? csv_number(row.reports[i].holevo_total()) : std::string("nan"));
            int clamp = 0, sub = 0;
            if (ok && !row.reports.empty())
                clamp = row.reports.front().warnings.clamp_count;
            for (const auto &rep : row.reports)
                sub += rep.warnings.sub_vacuum_count;
            line += "," + std::to_string(clamp) + "," + std::to_string(sub) + "," + csv_text(row.error) + "\n";
            out << line;
        }
    }

    inline std::string to_csv(const SweepResult &r)
    {
        std::ostringstream s;
        write_csv(r, s);
        return s.str();
    }

    inline void emit_csv(const SweepResult &r, const std::string &path)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write '" + path + "'");
        out << to_csv(r);
        out.flush();
        if (!out)
            throw IoError("write failed for '" + path + "'");
    }
}

#endif
