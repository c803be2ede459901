// Copyright 2026 The qest Authors
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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qest/adaptive.hpp"
#include "qest/asymptotics.hpp"
#include "qest/evaluator.hpp"

namespace qest::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

const char* const kCsvHeader = "n,scheme,estimator,prior,fidelity,stderr,method,discarded_fraction";

// Field names shared by flags (with dashes) and the JSON config (with underscores).
const std::vector<std::string> kFields = {"scheme", "estimator", "prior",  "n",       "radial_order",
                                          "angular_order", "samples", "seed",  "output",  "format",
                                          "method", "policy", "threads"};

struct Settings {
    std::string command;
    std::map<std::string, std::string> values;
    bool deterministic = false;

    std::optional<std::string> get(const std::string& key) const {
        auto it = values.find(key);
        if (it == values.end()) return std::nullopt;
        return it->second;
    }
    std::string get_or(const std::string& key, const std::string& fallback) const {
        return get(key).value_or(fallback);
    }
};

std::string flag_name(const std::string& field) {
    std::string s = "--" + field;
    for (char& c : s) {
        if (c == '_') c = '-';
    }
    return s;
}

long long parse_integer(const std::string& field, const std::string& text, long long min_value) {
    long long v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw UsageError(flag_name(field) + ": '" + text + "' is not an integer");
    if (v < min_value) {
        throw UsageError(flag_name(field) + ": must be >= " + std::to_string(min_value) + " (got " + text + ")");
    }
    return v;
}

std::uint64_t parse_seed(const std::string& text) {
    std::uint64_t v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw UsageError("--seed: '" + text + "' is not a non-negative integer");
    return v;
}

void load_config(const std::string& path, Settings& settings) {
    std::ifstream in(path);
    if (!in) throw UsageError("--config: cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw UsageError("--config: " + std::string(e.what()));
    }
    if (!j.is_object()) throw UsageError("--config: top level must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const Json& v = it.value();
        if (key == "command") {
            if (!v.is_string() || v.get<std::string>() != settings.command) {
                throw UsageError("--config: command " + v.dump() + " does not match '" + settings.command + "'");
            }
        } else if (key == "deterministic") {
            if (!v.is_boolean()) throw UsageError("--config: deterministic must be true or false");
            settings.deterministic = settings.deterministic || v.get<bool>();
        } else if (std::find(kFields.begin(), kFields.end(), key) != kFields.end()) {
            std::string text;
            if (v.is_string()) {
                text = v.get<std::string>();
            } else if (v.is_number_integer() || v.is_number_unsigned()) {
                text = v.dump();
            } else if (key == "n" && v.is_array()) {
                for (const Json& e : v) {
                    if (!e.is_number_integer()) throw UsageError("--config: n entries must be integers");
                    text += (text.empty() ? "" : ",") + e.dump();
                }
            } else {
                throw UsageError("--config: unsupported value for '" + key + "'");
            }
            settings.values.emplace(key, text);  // flags already present win
        } else {
            throw UsageError("--config: unknown field '" + key + "'");
        }
    }
}

struct Row {
    int n = 0;
    std::string scheme, estimator, prior, method;
    double fidelity = 0.0;
    std::optional<double> stderr_value;
    std::optional<double> discarded;
    std::optional<double> conditional;
    long samples = 0;
    int radial_order = 0;
    int angular_order = 0;
};

Row to_row(const FidelityReport& r) {
    Row row;
    row.n = r.copies();
    row.scheme = to_string(r.scheme.kind);
    row.estimator = to_string(r.estimator);
    row.prior = to_string(r.prior);
    row.method = to_string(r.method);
    row.fidelity = r.fidelity.value();
    row.stderr_value = r.standard_error;
    row.discarded = r.discarded_fraction;
    row.conditional = r.conditional_fidelity;
    row.samples = r.samples;
    row.radial_order = r.radial_order;
    row.angular_order = r.angular_order;
    return row;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string render_rows(const std::vector<Row>& rows, const std::string& format, const Json& extra) {
    std::ostringstream s;
    if (format == "csv") {
        s << kCsvHeader << '\n';
        for (const Row& r : rows) {
            s << r.n << ',' << r.scheme << ',' << r.estimator << ',' << r.prior << ',' << format_double(r.fidelity)
              << ',' << (r.stderr_value ? format_double(*r.stderr_value) : "") << ',' << r.method << ','
              << (r.discarded ? format_double(*r.discarded) : "") << '\n';
        }
        return s.str();
    }
    Json j;
    if (rows.size() == 1) {
        const Row& r = rows.front();
        j["n"] = r.n;
        j["scheme"] = r.scheme;
        j["estimator"] = r.estimator;
        j["prior"] = r.prior;
        j["fidelity"] = r.fidelity;
        j["stderr"] = optional_json(r.stderr_value);
        j["method"] = r.method;
        j["discarded_fraction"] = optional_json(r.discarded);
        j["conditional_fidelity"] = optional_json(r.conditional);
        j["samples"] = r.samples;
        j["radial_order"] = r.radial_order;
        j["angular_order"] = r.angular_order;
    } else {
        Json n = Json::array(), est = Json::array(), f = Json::array(), se = Json::array(), d = Json::array(),
             c = Json::array();
        for (const Row& r : rows) {
            n.push_back(r.n);
            est.push_back(r.estimator);
            f.push_back(r.fidelity);
            se.push_back(optional_json(r.stderr_value));
            d.push_back(optional_json(r.discarded));
            c.push_back(optional_json(r.conditional));
        }
        j["scheme"] = rows.front().scheme;
        j["prior"] = rows.front().prior;
        j["method"] = rows.front().method;
        j["n"] = n;
        j["estimator"] = est;
        j["fidelity"] = f;
        j["stderr"] = se;
        j["discarded_fraction"] = d;
        j["conditional_fidelity"] = c;
    }
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j.dump(2) + "\n";
}

std::string render_named(const std::vector<std::pair<std::string, double>>& values, const std::string& format) {
    if (format == "csv") {
        std::string s = "name,value\n";
        for (const auto& [k, v] : values) s += k + "," + format_double(v) + "\n";
        return s;
    }
    Json j = Json::object();
    for (const auto& [k, v] : values) j[k] = v;
    return j.dump(2) + "\n";
}

void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
    if (!path) {
        out << text;
        return;
    }
    const std::filesystem::path target(*path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        f << text;
        f.close();
        if (!f) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, target);
}

QuadratureOptions quadrature(const Settings& s) {
    QuadratureOptions q;
    if (auto v = s.get("radial_order")) q.radial_order = static_cast<int>(parse_integer("radial_order", *v, 2));
    if (auto v = s.get("angular_order")) q.angular_order = static_cast<int>(parse_integer("angular_order", *v, 2));
    return q;
}

ExecutionOptions execution(const Settings& s) {
    ExecutionOptions e;
    e.threads = s.get("threads") ? static_cast<unsigned>(parse_integer("threads", *s.get("threads"), 1))
                                 : default_thread_count();
    return e;
}

long sample_count(const Settings& s) {
    return static_cast<long>(parse_integer("samples", s.get_or("samples", "100000"), 1));
}

std::uint64_t required_seed(const Settings& s) {
    auto v = s.get("seed");
    if (!v) throw UsageError("--seed is required for stochastic runs");
    return parse_seed(*v);
}

PriorKind prior_for(const Settings& s, SchemeKind scheme) {
    if (auto v = s.get("prior")) return parse_prior_kind(*v);
    return scheme == SchemeKind::LocalXY ? PriorKind::EquatorialBures : PriorKind::FullBures;
}

std::vector<EstimatorKind> estimator_list(const std::string& text) {
    std::vector<EstimatorKind> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_estimator_kind(item));
    if (out.empty()) throw UsageError("--estimator: empty list");
    return out;
}

bool monte_carlo(const Settings& s) {
    const std::string m = s.get_or("method", "exact");
    if (m == "exact") return false;
    if (m == "monte-carlo" || m == "mc") return true;
    throw UsageError("--method: expected exact|monte-carlo (got '" + m + "')");
}

std::string format_for(const Settings& s, const std::string& fallback) {
    const std::string f = s.get_or("format", fallback);
    if (f != "csv" && f != "json") throw UsageError("--format: expected csv|json (got '" + f + "')");
    return f;
}

std::string execute(const Settings& s) {
    const std::string& cmd = s.command;
    if (cmd == "constants") {
        const AsymptoticConstants c = constants();
        return render_named({{"collective_coeff", c.collective_coeff},
                             {"xi_ml", c.xi_ml},
                             {"xi_o", c.xi_o},
                             {"b1", c.b1},
                             {"b2", c.b2},
                             {"b3", c.b3}},
                            format_for(s, "json"));
    }
    if (cmd == "integrals") {
        const AppendixIntegrals b = appendix_integrals();
        return render_named({{"b1", b.b1}, {"b2", b.b2}, {"b3", b.b3}, {"error", b.error}}, format_for(s, "json"));
    }

    const std::string format = format_for(s, "csv");
    const QuadratureOptions quad = quadrature(s);
    const ExecutionOptions exec = execution(s);
    const std::vector<int> copies = parse_copies(s.get_or("n", ""));
    std::vector<Row> rows;
    Json extra = Json::object();

    if (cmd == "fidelity" || cmd == "sweep") {
        if (cmd == "fidelity" && copies.size() != 1) throw UsageError("fidelity takes a single --n (use sweep)");
        const SchemeKind scheme = parse_scheme_kind(s.get_or("scheme", "local-xy"));
        const PriorKind prior = prior_for(s, scheme);
        const std::vector<EstimatorKind> estimators = estimator_list(s.get_or("estimator", "optimal"));
        if (cmd == "fidelity" && estimators.size() != 1) throw UsageError("fidelity takes a single --estimator");
        if (monte_carlo(s)) {
            const long samples = sample_count(s);
            const std::uint64_t seed = required_seed(s);
            for (int n : copies) {
                for (EstimatorKind e : estimators) {
                    rows.push_back(to_row(monte_carlo_fidelity({scheme, n}, e, prior, samples, seed, quad, exec)));
                }
            }
            extra["seed"] = seed;
        } else {
            const auto sweeps = sweep(scheme, estimators, prior, copies, quad, exec);
            for (std::size_t i = 0; i < copies.size(); ++i) {
                for (const SweepResult& r : sweeps) rows.push_back(to_row(r.points[i]));
            }
        }
    } else if (cmd == "tomography") {
        const PriorKind prior = prior_for(s, SchemeKind::LocalXY);
        for (int n : copies) rows.push_back(to_row(tomography_with_discard(n, prior, quad, exec)));
    } else if (cmd == "adaptive") {
        const AdaptivePolicy policy = parse_adaptive_policy(s.get_or("policy", "greedy-fidelity"));
        AdaptiveOptions options;
        if (auto v = s.get("radial_order")) options.radial_order = static_cast<int>(parse_integer("radial_order", *v, 2));
        if (auto v = s.get("angular_order")) {
            options.angular_order = static_cast<int>(parse_integer("angular_order", *v, 2));
        }
        const long samples = sample_count(s);
        const std::uint64_t seed = required_seed(s);
        for (int n : copies) rows.push_back(to_row(adaptive_local_fidelity(n, policy, samples, seed, options, exec)));
        extra["policy"] = to_string(policy);
        extra["seed"] = seed;
    } else {
        throw UsageError("unknown command '" + cmd + "'");
    }
    return render_rows(rows, format, extra);
}

}  // namespace

std::vector<int> parse_copies(const std::string& text) {
    if (text.empty()) throw UsageError("--n is required");
    std::vector<int> out;
    auto number = [](const std::string& t) { return static_cast<int>(parse_integer("n", t, 1)); };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() < 2 || parts.size() > 3) throw UsageError("--n: expected start:stop[:step]");
        const int start = number(parts[0]);
        const int stop = number(parts[1]);
        const int step = parts.size() == 3 ? number(parts[2]) : 1;
        if (stop < start) throw UsageError("--n: stop is below start");
        for (int v = start; v <= stop; v += step) out.push_back(v);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(number(item));
    }
    if (out.empty()) throw UsageError("--n: no values");
    return out;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("format_double: buffer too small");
    return std::string(buf, ptr);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Average-fidelity experiments for qubit state estimation"};
    app.require_subcommand(1);

    struct Command {
        const char* name;
        const char* help;
        std::vector<std::string> fields;
    };
    const std::vector<Command> commands = {
        {"constants", "Asymptotic constants", {"output", "format"}},
        {"integrals", "Correction integrals b1, b2, b3", {"output", "format"}},
        {"fidelity",
         "Average fidelity for one N",
         {"scheme", "estimator", "prior", "n", "radial_order", "angular_order", "samples", "seed", "output", "format",
          "method", "threads"}},
        {"sweep",
         "Average fidelity over a range of N",
         {"scheme", "estimator", "prior", "n", "radial_order", "angular_order", "samples", "seed", "output", "format",
          "method", "threads"}},
        {"tomography",
         "Local tomography with unphysical runs discarded",
         {"prior", "n", "radial_order", "angular_order", "output", "format", "threads"}},
        {"adaptive",
         "Adaptive single-copy measurements (Monte Carlo)",
         {"n", "policy", "radial_order", "angular_order", "samples", "seed", "output", "format", "threads"}},
    };
    const std::map<std::string, std::string> help = {
        {"scheme", "local-xy|collective"},
        {"estimator", "optimal|ml|tomography|random; sweep accepts a comma list"},
        {"prior", "full|equatorial (default: equatorial for local-xy, full for collective)"},
        {"n", "copies: N, start:stop:step or a comma list"},
        {"radial_order", "radial quadrature order"},
        {"angular_order", "angular quadrature order"},
        {"samples", "Monte Carlo samples (default 100000)"},
        {"seed", "random seed (required for stochastic runs)"},
        {"output", "output file (default: stdout)"},
        {"format", "csv|json"},
        {"method", "exact|monte-carlo"},
        {"policy", "fixed-xy|greedy-fidelity"},
        {"threads", "worker threads (default: QEST_THREADS or 1)"},
    };

    std::map<std::string, std::map<std::string, std::string>> storage;
    std::map<std::string, std::map<std::string, CLI::Option*>> options;
    std::map<std::string, std::string> config_path;
    std::map<std::string, bool> deterministic;
    std::map<std::string, CLI::App*> subs;
    for (const Command& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        subs[c.name] = sub;
        for (const std::string& f : c.fields) {
            options[c.name][f] = sub->add_option(flag_name(f), storage[c.name][f], help.at(f));
        }
        sub->add_option("--config", config_path[c.name], "JSON file with the same fields; flags override it");
        sub->add_flag("--deterministic", deterministic[c.name],
                      "ordered reduction (always on; results do not depend on --threads)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    std::optional<std::string> output;
    try {
        Settings settings;
        for (const Command& c : commands) {
            if (!subs[c.name]->parsed()) continue;
            settings.command = c.name;
            for (const auto& [field, opt] : options[c.name]) {
                if (opt->count() > 0) settings.values[field] = storage[c.name][field];
            }
            settings.deterministic = deterministic[c.name];
            if (!config_path[c.name].empty()) load_config(config_path[c.name], settings);
            for (const auto& [field, value] : settings.values) {
                if (std::find(c.fields.begin(), c.fields.end(), field) == c.fields.end()) {
                    throw UsageError(std::string(c.name) + " does not take '" + field + "'");
                }
            }
        }
        output = settings.get("output");
        const std::string text = execute(settings);
        emit(text, output, out);
        return kOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace qest::cli
