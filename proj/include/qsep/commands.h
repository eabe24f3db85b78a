// Copyright 2026 The qsep Authors
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

#ifndef QSEP_COMMANDS_H
#define QSEP_COMMANDS_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsep/optics.h"
#include "qsep/table.h"
#include "qsep/verify.h"

// Subcommands of the qsep tool, independent of argument parsing.
//
// Frozen CSV columns:
//   ud        eta1,q_ud,q1,q2
//   qmin      t,eta1,q_min,q1,q2
//   maxsep    s,s_prime_min
//   tradeoff  theta,q,s_prime
//   optics    input,n1,n2,n3,shots,empirical_q,exact_q,target_q,sigma,z_score,chi_square,chi_square_critical
//   verify    check,worst,tolerance,passed,detail
//
// maxsep adds an explicit row at s_cr and, when --s is given, at that s.
namespace qsep::cli {

enum class Command { Ud, Qmin, Maxsep, Tradeoff, Optics, Verify };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitVerification = 4;

struct RunConfig {
    Command command = Command::Ud;
    std::optional<double> s;
    std::optional<double> s_prime;
    std::optional<double> eta1;
    std::optional<double> q_max;
    int samples = 512;
    std::int64_t shots = 1000000;
    std::uint64_t seed = 1;
    Format format = Format::Csv;
    /// Empty for standard output.
    std::string output;
};

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

const char *command_name(Command c);

/// Checks that the parameters the command needs are present and in range.
void validate(const RunConfig &cfg);

Table cmd_ud(const RunConfig &cfg);
Table cmd_qmin(const RunConfig &cfg);
Table cmd_maxsep(const RunConfig &cfg);
Table cmd_tradeoff(const RunConfig &cfg);
optics::CertificationReport cmd_optics(const RunConfig &cfg);
std::vector<verify::CheckResult> cmd_verify(const RunConfig &cfg);

std::string verify_csv(const std::vector<verify::CheckResult> &checks);
std::string optics_csv(const optics::CertificationReport &report);

/// {command, params, seed, version}
nlohmann::ordered_json meta(const RunConfig &cfg);

/// Validates, runs the command and writes its document to `out`.
/// Diagnostics go to `err`. Returns the process exit code.
int run(const RunConfig &cfg, std::ostream &out, std::ostream &err);

}  // namespace qsep::cli

#endif
