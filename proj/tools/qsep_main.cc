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

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qsep/commands.h"

using qsep::cli::Command;
using qsep::cli::Format;
using qsep::cli::RunConfig;

namespace {

void add_value(CLI::App *app, const char *flag, std::optional<double> &slot, const char *help) {
    app->add_option_function<double>(flag, [&slot](double v) { slot = v; }, help);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Optimal separation of two pure quantum states"};
    app.set_version_flag("--version", std::string(qsep::kVersion));
    app.require_subcommand(1);

    RunConfig cfg;
    const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};

    struct Entry {
        Command command;
        const char *name;
        const char *help;
    };
    const Entry entries[] = {
        {Command::Ud, "ud", "Unambiguous discrimination failure vs eta1 (needs --s)"},
        {Command::Qmin, "qmin", "Minimum failure probability vs eta1 (needs --s, --s-prime)"},
        {Command::Maxsep, "maxsep", "Smallest reachable s' vs s (needs --eta1, --q-max)"},
        {Command::Tradeoff, "tradeoff", "Final overlap vs failure budget (needs --eta1, --s)"},
        {Command::Optics, "optics", "Simulate and certify the interferometer (needs --s, --s-prime)"},
        {Command::Verify, "verify", "Run the self-check suite"},
    };

    for (const Entry &e : entries) {
        CLI::App *sub = app.add_subcommand(e.name, e.help);
        add_value(sub, "--s", cfg.s, "Initial overlap");
        add_value(sub, "--s-prime", cfg.s_prime, "Final overlap");
        add_value(sub, "--eta1", cfg.eta1, "Prior of the first state");
        add_value(sub, "--q-max", cfg.q_max, "Failure budget");
        sub->add_option("--samples", cfg.samples, "Rows in a sweep")->capture_default_str();
        sub->add_option("--shots", cfg.shots, "Monte Carlo shots per input")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
        sub->add_option("--format", cfg.format, "csv or json")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("--output", cfg.output, "Output file (default: stdout)");
        Command c = e.command;
        sub->callback([&cfg, c] { cfg.command = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return qsep::cli::kExitUsage;
    }
    return qsep::cli::run(cfg, std::cout, std::cerr);
}
