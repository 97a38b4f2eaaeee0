#pragma once
//
// Command-line front end.  One subcommand per run; the report goes to the
// output stream (and to --out when given).
//
// Exit codes: 0 ok, 1 a mathematical check failed, 2 usage error.
//

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mnk/serialize.hpp"

namespace mnk {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  double tolerance = 1e-10;       // validation residual tolerance
  long long coset_cap = kDefaultCosetCap;
  int jobs = 1;
  std::string format = "json";
  std::string out;
};

struct SurveyRow {
  int n = 0, k = 0;
  bool validation = false;
  double tilt_margin = 0;
  int aut_order = 0;
  EnumerationResult presentation;
  std::optional<bool> isomorphism;  // empty when a generator is missing
  std::string missing_generator;
  int class_representative = 0;
  int genus = 0;
  int expected_genus = 0;
  bool orientable = false;
  int phi1_target = -1;
  bool consistent = false;  // all geometric / combinatorial checks hold
};

inline int expected_genus(int n) { return n % 3 == 0 ? n - 3 : n - 1; }

struct Report {
  json body;
  int code = kExitOk;
};

namespace cli_detail {

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
  } else if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + scalar_text(v[i]);
    out.emplace_back(path, s);
  } else {
    out.emplace_back(path, scalar_text(v));
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

/// Reports with a "rows" array render as tables in csv/text.
inline std::string render(const json& body, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << body.dump(2) << "\n";
    return os.str();
  }
  const bool table = body.contains("rows") && body["rows"].is_array() && !body["rows"].empty();
  if (table) {
    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    for (const auto& r : body["rows"]) {
      rows.emplace_back();
      flatten(r, "", rows.back());
    }
    const auto& header = rows.front();
    if (format == "csv") {
      for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_field(header[i].first);
      os << "\n";
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i].second);
        os << "\n";
      }
    } else {
      std::vector<std::size_t> width(header.size());
      for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].first.size();
      for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].second.size());
      for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << header[i].first;
      os << "\n";
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
          os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << r[i].second;
        os << "\n";
      }
      json rest = body;
      rest.erase("rows");
      std::vector<std::pair<std::string, std::string>> kv;
      flatten(rest, "", kv);
      for (const auto& [k, v] : kv) os << k << ": " << v << "\n";
    }
    return os.str();
  }
  std::vector<std::pair<std::string, std::string>> kv;
  flatten(body, "", kv);
  if (format == "csv") {
    os << "key,value\n";
    for (const auto& [k, v] : kv) os << csv_field(k) << "," << csv_field(v) << "\n";
  } else {
    for (const auto& [k, v] : kv) os << k << ": " << v << "\n";
  }
  return os.str();
}

/// {"command": name} followed by the fields of body.
inline json tagged(const char* name, const json& body) {
  json j{{"command", name}};
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

}  // namespace cli_detail

inline Report cmd_realize(int n, const RunConfig& cfg) {
  const auto real = build_realization(solve_parameters(n));
  const auto rep = validate_realization(real, {cfg.tolerance, std::min(cfg.tolerance, 1e-12)});
  return {cli_detail::tagged("realize", realization_json(real, rep)), rep.verdict ? kExitOk : kExitCheckFailed};
}

inline Report cmd_tilts(int n) {
  const auto real = build_realization(solve_parameters(n));
  json body = tilts_json(real);
  const bool ok = body["is_canonical"].get<bool>();
  return {cli_detail::tagged("tilts", body), ok ? kExitOk : kExitCheckFailed};
}

inline Report cmd_decompose(int n, int k) {
  const auto dec = build_decomposition(n, k);
  json body = decomposition_json(dec);
  const auto& b = body["boundary"];
  const bool ok = b["orientable"].get<bool>() && b["genus"].get<int>() == expected_genus(n);
  body["expected_genus"] = expected_genus(n);
  return {cli_detail::tagged("decompose", body), ok ? kExitOk : kExitCheckFailed};
}

inline bool partition_is_k_mirror(const ClassificationResult& c) {
  for (const auto& cls : c.classes) {
    std::vector<int> want{cls.front(), c.n - 1 - cls.front()};
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
    if (cls != want) return false;
  }
  return true;
}

inline Report cmd_classify(int n, const RunConfig& cfg) {
  const auto c = classify(n, cfg.jobs);
  const bool ok = partition_is_k_mirror(c);
  return {json{{"command", "classify"}, {"n", n}, {"classes", c.classes}, {"mirror_partition", ok}},
          ok ? kExitOk : kExitCheckFailed};
}

inline json group_report(const Decomposition& dec, const AutGroupData& aut, const RunConfig& cfg, bool& verdict) {
  const auto pres = stated_presentation(dec.n, dec.k);
  json body{{"n", dec.n}, {"k", dec.k}, {"aut_order", aut.order}, {"generators_found", aut.generators_found()}};
  json seeds = json::object();
  for (const auto& name : {"r", "s", "t", "u"})
    if (const auto& g = generator_image(aut, name)) seeds[name] = seed_json({g->piece_map[0], g->vertex_maps[0]});
  body["generator_seeds"] = seeds;
  body["presentation"] = presentation_json(pres);
  try {
    const auto cert = verify_isomorphism(pres, aut, cfg.coset_cap);
    body["certificate"] = to_json(cert);
    verdict = cert.verdict;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::MissingGenerator) throw;
    body["certificate"] = nullptr;
    body["missing_generator"] = e.what();
    body["enumeration"] = to_json(coset_enumerate(pres, cfg.coset_cap));
    verdict = false;
  }
  if (dec.n % 3 == 0) {
    const auto classes = edge_classes(dec);
    json psi = json::object();
    for (const auto& name : {"r", "s", "t", "u"})
      if (const auto& g = generator_image(aut, name)) psi[name] = cycle_notation(arc_permutation(*g, dec, classes));
    body["arc_permutations"] = psi;
  }
  json parity = json::object();
  for (const auto& name : {"r", "s", "t", "u"})
    if (const auto& g = generator_image(aut, name)) {
      try {
        parity[name] = edge_parity(*g);
      } catch (const Error&) {
        parity[name] = nullptr;
      }
    }
  body["edge_parity"] = parity;
  const auto utut = r_equals_utut(aut);
  body["r_equals_utut"] = utut ? json(*utut) : json(nullptr);
  body["candidate_maps"] = to_json(candidate_maps(dec, &aut));
  body["match"] = verdict;
  return body;
}

inline Report cmd_isom_group(int n, int k, const RunConfig& cfg) {
  const auto dec = build_decomposition(n, k);
  const auto aut = automorphism_group(dec, cfg.jobs);
  bool verdict = false;
  json body = group_report(dec, aut, cfg, verdict);
  return {cli_detail::tagged("isom-group", body), verdict ? kExitOk : kExitCheckFailed};
}

inline SurveyRow survey_cell(int n, int k, const ClassificationResult& cls, const RunConfig& cfg) {
  SurveyRow row;
  row.n = n;
  row.k = k;
  const auto real = build_realization(solve_parameters(n));
  row.validation = validate_realization(real, {cfg.tolerance, std::min(cfg.tolerance, 1e-12)}).verdict;
  row.tilt_margin = tilts_from_gram(real).max();
  const auto dec = build_decomposition(n, k);
  const auto aut = automorphism_group(dec);
  row.aut_order = aut.order;
  const auto pres = stated_presentation(n, k);
  try {
    const auto cert = verify_isomorphism(pres, aut, cfg.coset_cap);
    row.presentation = cert.enumeration;
    row.isomorphism = cert.verdict;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::MissingGenerator) throw;
    row.presentation = coset_enumerate(pres, cfg.coset_cap);
    row.missing_generator = e.what();
  }
  for (const auto& c : cls.classes)
    if (std::find(c.begin(), c.end(), k) != c.end()) row.class_representative = c.front();
  const auto bs = boundary_surface(dec);
  row.genus = bs.genus;
  row.orientable = bs.is_orientable;
  row.expected_genus = expected_genus(n);
  for (int k2 = 0; k2 < n; ++k2)
    if (propagate(dec, build_decomposition(n, k2), kPhiSeeds[1])) {
      row.phi1_target = k2;
      break;
    }
  row.consistent = row.validation && row.tilt_margin < 0 && row.orientable && row.genus == row.expected_genus &&
                   row.phi1_target == n - k - 1 && row.class_representative == std::min(k, n - k - 1);
  return row;
}

inline json to_json(const SurveyRow& r) {
  json j{{"n", r.n},
         {"k", r.k},
         {"validation", r.validation},
         {"tilt_margin", r.tilt_margin},
         {"aut_order", r.aut_order}};
  j["presentation_order"] = r.presentation.status == EnumerationStatus::Completed ? json(r.presentation.order)
                                                                                    : json("CapExceeded");
  j["isomorphism"] = r.isomorphism ? json(*r.isomorphism) : json(nullptr);
  j["class_representative"] = r.class_representative;
  j["genus"] = r.genus;
  j["expected_genus"] = r.expected_genus;
  j["orientable"] = r.orientable;
  j["phi1_target"] = r.phi1_target;
  j["consistent"] = r.consistent;
  return j;
}

inline Report cmd_survey(int n_min, int n_max, const RunConfig& cfg) {
  std::vector<int> ns;
  for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
  const auto classes = parallel_map<ClassificationResult>(ns.size(), cfg.jobs, [&](std::size_t i) { return classify(ns[i]); });
  std::vector<std::pair<int, int>> cells;
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (int k = 0; k < ns[i]; ++k) cells.emplace_back(static_cast<int>(i), k);
  const auto rows = parallel_map<SurveyRow>(cells.size(), cfg.jobs, [&](std::size_t c) {
    const auto [i, k] = cells[c];
    return survey_cell(ns[i], k, classes[i], cfg);
  });
  json body{{"command", "survey"}, {"n_min", n_min}, {"n_max", n_max}};
  json arr = json::array();
  int inconsistent = 0, mismatched = 0;
  for (const auto& r : rows) {
    arr.push_back(to_json(r));
    inconsistent += !r.consistent;
    mismatched += !(r.isomorphism && *r.isomorphism);
  }
  body["rows"] = arr;
  body["inconsistent_rows"] = inconsistent;
  body["presentation_mismatches"] = mismatched;
  return {body, inconsistent ? kExitCheckFailed : kExitOk};
}

inline Report cmd_verify_presentations(int n_min, int n_max, const RunConfig& cfg) {
  std::vector<std::pair<int, int>> cells;
  for (int n = n_min; n <= n_max; ++n)
    for (int k = 0; k < n; ++k) cells.emplace_back(n, k);
  const auto rows = parallel_map<json>(cells.size(), cfg.jobs, [&](std::size_t c) {
    const auto [n, k] = cells[c];
    const auto dec = build_decomposition(n, k);
    const auto aut = automorphism_group(dec);
    const auto pres = stated_presentation(n, k);
    json row{{"n", n}, {"k", k}, {"provenance", pres.provenance}, {"aut_order", aut.order}};
    try {
      const auto cert = verify_isomorphism(pres, aut, cfg.coset_cap);
      const bool rels = std::all_of(cert.relators.begin(), cert.relators.end(), [](const auto& r) { return r.holds; });
      row["presentation_order"] = to_json(cert.enumeration)["order"];
      row["relators_hold"] = rels;
      row["surjective"] = cert.surjective;
      row["missing_generator"] = nullptr;
      row["match"] = cert.verdict;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MissingGenerator) throw;
      row["presentation_order"] = to_json(coset_enumerate(pres, cfg.coset_cap))["order"];
      row["relators_hold"] = nullptr;
      row["surjective"] = nullptr;
      row["missing_generator"] = e.what();
      row["match"] = false;
    }
    return row;
  });
  json body{{"command", "verify-presentations"}, {"n_min", n_min}, {"n_max", n_max}};
  int mismatches = 0;
  for (const auto& r : rows) mismatches += !r["match"].get<bool>();
  body["rows"] = rows;
  body["mismatches"] = mismatches;
  return {body, mismatches ? kExitCheckFailed : kExitOk};
}

/// Entry point; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperbolic manifolds M_{n,k}: geometry, canonical decomposition, isometry groups", "mnk"};
  app.require_subcommand(1);
  RunConfig cfg;
  int n = 0, k = 0, n_min = 4, n_max = 12;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--tolerance", cfg.tolerance, "Residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--coset-cap", cfg.coset_cap, "Coset enumeration cap")->check(CLI::Range(1LL, 100000000LL));
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--out", cfg.out, "Also write the report to this file");
  };
  auto* realize = app.add_subcommand("realize", "Solve and validate the realization of Q_n");
  auto* tilts = app.add_subcommand("tilts", "Tilts of Q_n and the canonicality verdict");
  auto* decompose = app.add_subcommand("decompose", "Build CD_{n,k}: pairings, edge classes, boundary");
  auto* classify_cmd = app.add_subcommand("classify", "Partition k = 0..n-1 into isometry classes");
  auto* isom = app.add_subcommand("isom-group", "Automorphism group of CD_{n,k} against its presentation");
  auto* survey = app.add_subcommand("survey", "All checks over a range of n");
  auto* verify = app.add_subcommand("verify-presentations", "Presentation orders against brute force");
  for (auto* sub : {realize, tilts, classify_cmd}) sub->add_option("--n", n, "n")->required()->check(CLI::Range(4, 100000));
  for (auto* sub : {decompose, isom}) {
    sub->add_option("--n", n, "n")->required()->check(CLI::Range(sub == decompose ? 3 : 4, 100000));
    sub->add_option("--k", k, "step k, 0 <= k < n")->required();
  }
  for (auto* sub : {survey, verify}) {
    sub->add_option("--n-min", n_min, "smallest n")->check(CLI::Range(4, 100000));
    sub->add_option("--n-max", n_max, "largest n")->check(CLI::Range(4, 100000));
  }
  for (auto* sub : {realize, tilts, decompose, classify_cmd, isom, survey, verify}) add_common(sub);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if ((survey->parsed() || verify->parsed()) && n_min > n_max) {
    err << "error: --n-min must not exceed --n-max\n";
    return kExitUsage;
  }

  Report rep;
  try {
    if (realize->parsed()) rep = cmd_realize(n, cfg);
    else if (tilts->parsed()) rep = cmd_tilts(n);
    else if (decompose->parsed()) rep = cmd_decompose(n, k);
    else if (classify_cmd->parsed()) rep = cmd_classify(n, cfg);
    else if (isom->parsed()) rep = cmd_isom_group(n, k, cfg);
    else if (survey->parsed()) rep = cmd_survey(n_min, n_max, cfg);
    else rep = cmd_verify_presentations(n_min, n_max, cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const bool usage = e.kind() == ErrorKind::UnsupportedN || e.kind() == ErrorKind::InvalidStep;
    return usage ? kExitUsage : kExitCheckFailed;
  }

  const std::string text = cli_detail::render(rep.body, cfg.format);
  out << text;
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << cfg.out << "\n";
      return kExitUsage;
    }
    f << text;
  }
  return rep.code;
}

}  // namespace mnk
