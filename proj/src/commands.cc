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


#include "qsep/commands.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "qsep/solvers.h"

namespace qsep::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double require(const std::optional<double> &v, const char *flag) {
    if (!v) throw UsageError(std::string("missing required flag ") + flag);
    return *v;
}

void check_unit(const std::optional<double> &v, const char *flag) {
    if (v && !(*v >= 0 && *v <= 1)) {
        throw UsageError(std::string(flag) + " must lie in [0, 1], got " + format_number(*v));
    }
}

// k/(n-1) for k = 0..n-1, scaled to [lo, hi].
std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = lo + (hi - lo) * static_cast<double>(k) / (n - 1);
    out.back() = hi;
    return out;
}

std::string csv_field(const std::string &text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

nlohmann::ordered_json number_or_null(double x) {
    return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr);
}

std::vector<std::vector<double>> optics_rows(const optics::CertificationReport &r) {
    std::vector<std::vector<double>> rows;
    for (const auto &in : r.inputs) {
        rows.push_back({static_cast<double>(in.input), static_cast<double>(in.counts.n1),
                        static_cast<double>(in.counts.n2), static_cast<double>(in.counts.n3),
                        static_cast<double>(in.counts.shots), in.empirical_q, in.exact_probabilities[2],
                        r.target_q, in.sigma, in.z_score, in.chi_square, in.chi_square_critical});
    }
    return rows;
}

const std::vector<std::string> kOpticsColumns = {"input", "n1",          "n2",         "n3",
                                                 "shots", "empirical_q", "exact_q",    "target_q",
                                                 "sigma", "z_score",     "chi_square", "chi_square_critical"};

}  // namespace

const char *command_name(Command c) {
    switch (c) {
        case Command::Ud: return "ud";
        case Command::Qmin: return "qmin";
        case Command::Maxsep: return "maxsep";
        case Command::Tradeoff: return "tradeoff";
        case Command::Optics: return "optics";
        case Command::Verify: return "verify";
    }
    return "unknown";
}

void validate(const RunConfig &cfg) {
    check_unit(cfg.s, "--s");
    check_unit(cfg.s_prime, "--s-prime");
    check_unit(cfg.eta1, "--eta1");
    check_unit(cfg.q_max, "--q-max");
    if (cfg.samples < 2) throw UsageError("--samples must be at least 2");
    if (cfg.shots < 1) throw UsageError("--shots must be positive");

    switch (cfg.command) {
        case Command::Ud:
            require(cfg.s, "--s");
            break;
        case Command::Qmin:
        case Command::Optics: {
            double s = require(cfg.s, "--s");
            double sp = require(cfg.s_prime, "--s-prime");
            if (sp > s) throw UsageError("--s-prime must not exceed --s");
            if (sp < s && s >= 1) throw UsageError("--s must be below 1 when --s-prime < --s");
            if (cfg.command == Command::Optics && cfg.shots < 10000) {
                throw UsageError("--shots must be at least 10000 for optics");
            }
            break;
        }
        case Command::Maxsep:
            require(cfg.eta1, "--eta1");
            require(cfg.q_max, "--q-max");
            break;
        case Command::Tradeoff:
            require(cfg.eta1, "--eta1");
            require(cfg.s, "--s");
            break;
        case Command::Verify:
            break;
    }
}

Table cmd_ud(const RunConfig &cfg) {
    Table t{{"eta1", "q_ud", "q1", "q2"}, {}};
    double s = *cfg.s;
    for (double eta1 : grid(0, 1, cfg.samples)) {
        MinFailure m = unambiguous_discrimination(Priors(eta1), s);
        t.add_row({eta1, m.q.q, m.point.q1, m.point.q2});
    }
    return t;
}

Table cmd_qmin(const RunConfig &cfg) {
    Table t{{"t", "eta1", "q_min", "q1", "q2"}, {}};
    double s = *cfg.s;
    double sp = *cfg.s_prime;
    if (sp == 0) {
        for (double eta1 : grid(0, 0.5, cfg.samples)) {
            MinFailure m = unambiguous_discrimination(Priors(eta1), s);
            t.add_row({kNaN, eta1, m.q.q, m.point.q1, m.point.q2});
        }
        return t;
    }
    if (sp == s) {
        for (double eta1 : grid(0, 0.5, cfg.samples)) t.add_row({kNaN, eta1, 0, 0, 0});
        return t;
    }
    for (const QminSample &q : qmin_curve(OverlapSpec(s, sp), cfg.samples)) {
        t.add_row({q.t, q.eta1, q.q_min.q, q.point.q1, q.point.q2});
    }
    return t;
}

Table cmd_maxsep(const RunConfig &cfg) {
    Table t{{"s", "s_prime_min"}, {}};
    Priors pr(*cfg.eta1);
    FailureBudget q{*cfg.q_max};
    std::vector<double> ss = grid(0, 1, cfg.samples);
    ss.push_back(critical_overlap(pr, q));
    if (cfg.s) ss.push_back(*cfg.s);
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    for (double s : ss) t.add_row({s, max_separation(pr, s, q).s_prime});
    return t;
}

Table cmd_tradeoff(const RunConfig &cfg) {
    Table t{{"theta", "q", "s_prime"}, {}};
    for (const TradeoffSample &x : tradeoff_curve(Priors(*cfg.eta1), *cfg.s, cfg.samples)) {
        t.add_row({x.theta, x.q.q, x.s_prime});
    }
    return t;
}

optics::CertificationReport cmd_optics(const RunConfig &cfg) {
    auto itf = optics::build_interferometer(*cfg.s, *cfg.s_prime);
    return optics::certify_separation(itf, cfg.shots, cfg.seed);
}

std::vector<verify::CheckResult> cmd_verify(const RunConfig &cfg) {
    verify::VerifyOptions opts;
    opts.seed = cfg.seed;
    opts.shots = cfg.shots;
    return verify::run_all(opts);
}

std::string verify_csv(const std::vector<verify::CheckResult> &checks) {
    std::string out = "check,worst,tolerance,passed,detail\n";
    for (const auto &c : checks) {
        out += c.name + "," + format_number(c.worst) + "," + format_number(c.tolerance) + "," +
               (c.passed ? "1" : "0") + "," + csv_field(c.detail) + "\n";
    }
    return out;
}

std::string optics_csv(const optics::CertificationReport &report) {
    return to_csv(Table{kOpticsColumns, optics_rows(report)});
}

nlohmann::ordered_json meta(const RunConfig &cfg) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    if (cfg.s) params["s"] = *cfg.s;
    if (cfg.s_prime) params["s_prime"] = *cfg.s_prime;
    if (cfg.eta1) params["eta1"] = *cfg.eta1;
    if (cfg.q_max) params["q_max"] = *cfg.q_max;
    params["samples"] = cfg.samples;
    params["shots"] = cfg.shots;
    nlohmann::ordered_json m;
    m["command"] = command_name(cfg.command);
    m["params"] = params;
    m["seed"] = cfg.seed;
    m["version"] = kVersion;
    return m;
}

int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    std::string doc;
    int code = kExitOk;
    bool json = cfg.format == Format::Json;
    try {
        validate(cfg);
        switch (cfg.command) {
            case Command::Ud:
            case Command::Qmin:
            case Command::Maxsep:
            case Command::Tradeoff: {
                Table t = cfg.command == Command::Ud       ? cmd_ud(cfg)
                          : cfg.command == Command::Qmin   ? cmd_qmin(cfg)
                          : cfg.command == Command::Maxsep ? cmd_maxsep(cfg)
                                                           : cmd_tradeoff(cfg);
                doc = json ? qsep::to_json(t, meta(cfg)).dump(2) + "\n" : to_csv(t);
                break;
            }
            case Command::Optics: {
                auto report = cmd_optics(cfg);
                if (json) {
                    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
                    for (const auto &row : optics_rows(report)) {
                        nlohmann::ordered_json r;
                        for (std::size_t k = 0; k < kOpticsColumns.size(); ++k) {
                            // input and the four counts are integers
                            if (k < 5) {
                                r[kOpticsColumns[k]] = static_cast<std::int64_t>(row[k]);
                            } else {
                                r[kOpticsColumns[k]] = number_or_null(row[k]);
                            }
                        }
                        rows.push_back(r);
                    }
                    nlohmann::ordered_json j{{"meta", meta(cfg)}, {"rows", rows}};
                    j["report"] = optics::to_json(report);
                    doc = j.dump(2) + "\n";
                } else {
                    doc = optics_csv(report);
                }
                if (!report.passed) {
                    err << "optics certification failed\n";
                    code = kExitVerification;
                }
                break;
            }
            case Command::Verify: {
                auto checks = cmd_verify(cfg);
                if (json) {
                    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
                    for (const auto &c : checks) {
                        rows.push_back({{"check", c.name},
                                        {"worst", number_or_null(c.worst)},
                                        {"tolerance", c.tolerance},
                                        {"passed", c.passed},
                                        {"detail", c.detail}});
                    }
                    doc = nlohmann::ordered_json{{"meta", meta(cfg)}, {"rows", rows}}.dump(2) + "\n";
                } else {
                    doc = verify_csv(checks);
                }
                for (const auto &c : checks) {
                    if (!c.passed) {
                        err << "FAILED " << c.name << ": worst " << format_number(c.worst) << " > "
                            << format_number(c.tolerance) << " " << c.detail << "\n";
                        code = kExitVerification;
                    }
                }
                break;
            }
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericError &e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }

    if (cfg.output.empty()) {
        out << doc;
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) {
            err << "usage error: cannot open " << cfg.output << "\n";
            return kExitUsage;
        }
        f << doc;
    }
    return code;
}

}  // namespace qsep::cli
