#include "avo/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "avo/analysis.hpp"
#include "avo/corpus.hpp"
#include "avo/io.hpp"
#include "avo/languages.hpp"

namespace avo {

namespace {

constexpr int kDefinite = 0, kError = 1, kUnknown = 2;

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct BudgetFlags {
  std::string preset = "default";
  std::optional<int> radius_cap, candidate_radius_cap, candidate_max_cells, verify_radius_cap;
  std::optional<std::uint64_t> node_cap;
  std::optional<std::size_t> pattern_cap;

  void attach(CLI::App* app) {
    app->add_option("--budget", preset, "small, default or large")->check(CLI::IsMember({"small", "default", "large"}));
    app->add_option("--radius-cap", radius_cap);
    app->add_option("--node-cap", node_cap);
    app->add_option("--candidate-radius-cap", candidate_radius_cap);
    app->add_option("--candidate-max-cells", candidate_max_cells);
    app->add_option("--verify-radius-cap", verify_radius_cap);
    app->add_option("--pattern-cap", pattern_cap);
  }
  Budget get() const {
    Budget b = Budget::named(preset);
    if (radius_cap) b.radius_cap = *radius_cap;
    if (node_cap) b.node_cap = *node_cap;
    if (candidate_radius_cap) b.candidate_radius_cap = *candidate_radius_cap;
    if (candidate_max_cells) b.candidate_max_cells = *candidate_max_cells;
    if (verify_radius_cap) b.verify_radius_cap = *verify_radius_cap;
    if (pattern_cap) b.pattern_cap = *pattern_cap;
    return b;
  }
};

// A spec file or a certificate file; certificates are re-verified on load.
struct Input {
  std::string text;
  SftSpec spec;
  std::optional<LocalMap> map;
  std::optional<Certificate> cert;
  std::vector<std::string> warnings;
};

Input load_input(const std::string& path, const Budget& budget) {
  Input in;
  in.text = read_file(path);
  bool is_cert = false;
  try {
    auto j = nlohmann::json::parse(in.text);
    is_cert = j.is_object() && j.contains("format");
  } catch (const nlohmann::json::parse_error&) {
  }
  if (is_cert) {
    auto loaded = load_certificate(in.text, budget);
    if (!loaded.check.ok) throw ParseError(path, "certificate failed re-verification: " + loaded.check.reason);
    in.spec = loaded.certificate.original;
    in.cert = std::move(loaded.certificate);
    return in;
  }
  auto parsed = parse_sft_spec(in.text);
  in.spec = std::move(parsed.spec);
  in.map = std::move(parsed.map);
  in.warnings = std::move(parsed.warnings);
  return in;
}

Shape parse_shape(const Group& G, const std::string& s) {
  if (s.rfind("ball:", 0) == 0) {
    const auto& m = G.ball(std::stoi(s.substr(5))).members;
    return make_shape(std::vector<Point>(m.begin(), m.end()));
  }
  if (s.rfind("interval:", 0) == 0) {
    if (G.kind() == GroupKind::Free || G.arity() != 1) throw ParseError("--shape", "intervals need the group Z");
    const auto colon = s.find(':', 9);
    if (colon == std::string::npos) throw ParseError("--shape", "expected interval:a:b");
    const int a = std::stoi(s.substr(9, colon - 9)), b = std::stoi(s.substr(colon + 1));
    Shape out;
    for (int i = a; i <= b; ++i) out.push_back(Point({i}));
    return out;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("--shape", e.what());
  }
  if (!j.is_array()) throw ParseError("--shape", "expected a list of coordinate lists");
  Shape out;
  for (const auto& c : j) {
    Point p(c.get<std::vector<int>>());
    try {
      G.validate(p);
    } catch (const std::exception& e) {
      throw ParseError("--shape", e.what());
    }
    out.push_back(std::move(p));
  }
  return make_shape(std::move(out));
}

std::optional<Certificate> certificate_for(const Input& in, const Budget& budget, Report& r) {
  if (in.cert) {
    r.add("certificate", "loaded, re-verified");
    return in.cert;
  }
  auto found = find_certificate(in.spec, natural_family(in.spec), budget);
  if (!found.certificate) {
    r.add("certificate", "none: " + found.reason);
    return std::nullopt;
  }
  r.add("certificate", family_name(found.certificate->family) + " R=" + std::to_string(found.certificate->radius));
  return found.certificate;
}

std::unique_ptr<LanguageOracle> oracle_for(const Input& in, const Budget& budget, Report& r) {
  const Group& G = in.spec.group;
  if (G.kind() == GroupKind::FreeAbelian && G.arity() == 1 && in.spec.levels == 1) {
    r.add("oracle", "transfer");
    return std::make_unique<TransferOracle>(in.spec);
  }
  if (in.cert) {
    r.add("oracle", "certificate");
    return std::make_unique<CertificateOracle>(*in.cert);
  }
  r.add("oracle", "budgeted");
  return std::make_unique<BudgetedOracle>(in.spec, budget);
}

std::string patterns_string(const SftSpec& spec, const std::vector<Pattern>& ps) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : "; ") + to_string(spec, p);
  return s.empty() ? "(none)" : s;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures for shifts of finite type"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "structured output with the same keys");

  BudgetFlags bf;
  std::string spec_path, spec_path2, family_arg, shape_arg, out_path, check, map_path, name;
  int axis = 1, r_max = 4, symbol = 0, k = 1, gap = 1, window = 1;
  bool list = false;

  auto* certify = app.add_subcommand("certify", "search for a certificate");
  certify->add_option("spec", spec_path)->required();
  certify->add_option("--family", family_arg)->check(CLI::IsMember({"ii", "all-subsets", "tree-convex", "cornered"}));
  certify->add_option("--out", out_path, "write the certificate file here");
  bf.attach(certify);

  auto* language = app.add_subcommand("language", "exact language on a shape");
  language->add_option("input", spec_path, "spec or certificate file")->required();
  language->add_option("--shape", shape_arg, "JSON coordinate list, ball:W or interval:a:b")->required();
  language->add_flag("--list", list);
  bf.attach(language);

  auto* compare = app.add_subcommand("compare", "decide X ⊆ Y");
  compare->add_option("x", spec_path)->required();
  compare->add_option("y", spec_path2)->required();
  bf.attach(compare);

  auto* empty = app.add_subcommand("empty", "decide emptiness");
  empty->add_option("spec", spec_path)->required();
  bf.attach(empty);

  auto* project = app.add_subcommand("project", "restriction to the first axes");
  project->add_option("input", spec_path)->required();
  project->add_option("--axis", axis)->required();
  bf.attach(project);

  auto* factor = app.add_subcommand("factor", "forbidden patterns of a map image");
  factor->add_option("spec", spec_path)->required();
  factor->add_option("--map", map_path, "file with a local_map section (default: the spec's own)");
  bf.attach(factor);

  auto* analyze = app.add_subcommand("analyze", "structural checks");
  analyze->add_option("input", spec_path)->required();
  analyze->add_option("--check", check)->required()->check(CLI::IsMember({"avoradius", "eec", "safe-symbol", "ktep", "tssm"}));
  analyze->add_option("--shape", shape_arg);
  analyze->add_option("--r-max", r_max);
  analyze->add_option("--symbol", symbol);
  analyze->add_option("--k", k);
  analyze->add_option("--gap", gap);
  analyze->add_option("--window", window);
  bf.attach(analyze);

  auto* example = app.add_subcommand("example", "print a corpus spec");
  example->add_option("name", name)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kDefinite;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  const auto start = std::chrono::steady_clock::now();
  Report r;
  int code = kDefinite;
  std::string payload;  // printed after the report (spec or certificate text)
  try {
    const Budget budget = bf.get();
    if (*example) {
      auto e = builtin_example(name);
      out << serialize_spec(e.spec, e.map);
      return kDefinite;
    }
    Input in = load_input(spec_path, budget);
    for (const auto& w : in.warnings) err << "warning: " << w << "\n";
    r.add("command", app.get_subcommands().front()->get_name());
    r.add("inputs", fnv_hex(in.text));
    r.add("budget", budget.describe());

    if (*certify) {
      const Family f = family_arg.empty() ? natural_family(in.spec) : parse_family(family_arg);
      auto found = find_certificate(in.spec, f, budget);
      if (found.certificate) {
        const auto& c = *found.certificate;
        r.add("verdict", "Certified");
        r.add("family", family_name(c.family));
        r.add("radius", c.radius);
        r.add("q", patterns_string(c.q, c.q.forbidden));
        r.add("digest", certificate_digest(c));
        if (!out_path.empty()) {
          std::ofstream(out_path) << serialize_certificate(c);
          r.add("certificate_file", out_path);
        }
      } else {
        r.add("verdict", "Unknown");
        r.add("reason", found.reason);
        code = kUnknown;
      }
    } else if (*language) {
      const Shape D = parse_shape(in.spec.group, shape_arg);
      auto cert = certificate_for(in, budget, r);
      std::optional<std::vector<Pattern>> lang;
      if (cert) lang = ExactLanguage(*cert).language_on(D);
      if (lang) {
        r.add("verdict", "Exact");
        r.add("count", static_cast<long long>(lang->size()));
        if (list) r.add("patterns", patterns_string(in.spec, *lang));
      } else {
        r.add("verdict", "NotDerived");
        code = kUnknown;
      }
    } else if (*compare) {
      Input y = load_input(spec_path2, budget);
      for (const auto& w : y.warnings) err << "warning: " << w << "\n";
      auto res = decide_inclusion(in.spec, y.spec, budget, in.cert ? &*in.cert : nullptr);
      static const char* names[] = {"Subset", "NotSubset", "Unknown"};
      r.add("verdict", names[static_cast<int>(res.status)]);
      if (res.status == InclusionResult::Status::NotSubset) r.add("witness", to_string(in.spec, res.witness));
      r.add("evidence", res.evidence);
      if (res.status == InclusionResult::Status::Unknown) code = kUnknown;
    } else if (*empty) {
      auto res = decide_emptiness(in.spec, budget);
      static const char* names[] = {"Empty", "Nonempty", "Unknown"};
      r.add("verdict", names[static_cast<int>(res.status)]);
      r.add("evidence", res.evidence);
      if (res.status == EmptinessResult::Status::Unknown) code = kUnknown;
    } else if (*project) {
      auto cert = certificate_for(in, budget, r);
      if (cert) {
        const SftSpec p = project_to_subgroup(*cert, axis);
        r.add("verdict", "Projected");
        r.add("group", p.group.key());
        r.add("forbidden", patterns_string(p, p.forbidden));
        payload = serialize_spec(p);
      } else {
        r.add("verdict", "Unknown");
        code = kUnknown;
      }
    } else if (*factor) {
      std::optional<LocalMap> map = in.map;
      if (!map_path.empty()) map = parse_sft_spec(read_file(map_path)).map;
      if (!map) throw ParseError("--map", "no local_map section found");
      const SftSpec rel = build_graph_sft(in.spec, *map);
      auto found = factor_certificate(rel, budget);
      if (found.certificate) {
        const SftSpec img = image_forbidden(*found.certificate);
        r.add("verdict", "Image");
        r.add("radius", found.certificate->radius);
        r.add("forbidden", patterns_string(img, img.forbidden));
        payload = serialize_spec(img);
      } else {
        r.add("verdict", "Unknown");
        r.add("reason", found.reason);
        code = kUnknown;
      }
    } else if (*analyze) {
      if (check == "safe-symbol") {
        r.add("verdict", safe_symbol_check(in.spec, symbol) ? "Safe" : "NotSafe");
      } else if (check == "ktep") {
        std::vector<Pattern> allowed;
        if (shape_arg.empty()) throw ParseError("--shape", "ktep needs the pattern domain");
        auto lv = locally_valid_patterns(in.spec, parse_shape(in.spec.group, shape_arg), budget.pattern_cap, budget.node_cap);
        r.add("verdict", ktep_check(in.spec.group, lv.patterns, static_cast<int>(in.spec.alphabet.size()), k) ? "Holds" : "Fails");
      } else if (check == "tssm") {
        auto oracle = oracle_for(in, budget, r);
        auto res = tssm_gap_check(in.spec, gap, window, *oracle);
        static const char* names[] = {"HoldsOnWindow", "Fails", "Unknown"};
        r.add("verdict", names[static_cast<int>(res.status)]);
        if (res.status == TssmResult::Status::Fails) {
          r.add("u", to_string(in.spec, res.u));
          r.add("s", to_string(in.spec, res.s));
          r.add("v", to_string(in.spec, res.v));
        }
        if (res.status == TssmResult::Status::Unknown) {
          r.add("reason", res.reason);
          code = kUnknown;
        }
      } else {
        if (shape_arg.empty()) throw ParseError("--shape", check + " needs a shape");
        const Shape C = parse_shape(in.spec.group, shape_arg);
        auto oracle = oracle_for(in, budget, r);
        if (check == "avoradius") {
          auto f = avoradius_for_shape(in.spec, C, r_max, *oracle);
          const bool exact = f.status == AvoFinding::Status::Established;
          r.add("verdict", std::string(f.radius ? "Determined" : "NotDetermined") + (exact ? "" : " (budgeted evidence)"));
          if (f.radius) r.add("radius", *f.radius);
          for (const auto& w : f.failures)
            r.add("witness_r" + std::to_string(w.r), to_string(in.spec, w.x) + " vs " + to_string(in.spec, w.y) +
                                                         " at symbol " + in.spec.alphabet[static_cast<std::size_t>(w.separating_symbol)] +
                                                         ": " + to_string(w.verdict_x) + " / " + to_string(w.verdict_y));
          if (!exact) code = kUnknown;
        } else {
          auto ec = equal_extension_counts(in.spec, {C}, *oracle).front();
          if (!ec.exact) {
            r.add("verdict", "Unknown");
            code = kUnknown;
          } else if (ec.constant) {
            r.add("verdict", "Constant");
            r.add("count", static_cast<long long>(*ec.constant));
          } else {
            r.add("verdict", "NotConstant");
            r.add("witness", to_string(in.spec, ec.witness_a) + " (" + std::to_string(ec.count_a) + ") vs " +
                                 to_string(in.spec, ec.witness_b) + " (" + std::to_string(ec.count_b) + ")");
          }
        }
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  r.add("wall_ms", static_cast<long long>(ms));
  out << (as_json ? r.json() : r.text());
  if (!payload.empty() && !as_json) out << payload;
  return code;
}

}  // namespace avo
