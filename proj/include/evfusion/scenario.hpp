#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "evfusion/bba.hpp"
#include "evfusion/errors.hpp"
#include "evfusion/expr.hpp"
#include "evfusion/fusion.hpp"
#include "evfusion/lattice.hpp"
#include "evfusion/referee.hpp"

namespace evfusion {

/// One declared source: a name and its mass entries as (expression,
/// mass) pairs. Entries naming the same proposition accumulate.
struct SourceSpec {
  std::string name;
  std::vector<std::pair<std::string, double>> masses;
};

/// Declarative description of a fusion run, as read from a scenario
/// document.
struct Scenario {
  FrameSpec frame;
  LatticeKind lattice;
  std::vector<SourceSpec> sources;
  RefereeKind rule;
  EngineConfig engine;
};

namespace detail {

inline std::string joined_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i != 0) out += ", ";
    out += names[i];
  }
  return out;
}

inline const nlohmann::json& field(const nlohmann::json& object,
                                   const char* key, const char* where) {
  if (!object.is_object() || !object.contains(key))
    throw ScenarioError(std::string("scenario: missing field '") + key +
                        "' in " + where);
  return object.at(key);
}

/// Accumulates a source's declared masses, contextualizing any
/// expression or mass error with the source name.
inline MassAssignment accumulate_source(const Lattice& lattice,
                                        const SourceSpec& source) {
  MassAssignment bba(lattice);
  for (const auto& [text, mass] : source.masses) {
    try {
      bba = add_mass(bba, parse_expr(lattice, text), mass);
    } catch (const ContradictionError& e) {
      throw ContradictionError("source \"" + source.name + "\", entry \"" +
                               text + "\": " + e.what());
    } catch (const ParseError& e) {
      throw ScenarioError("source \"" + source.name + "\", entry \"" + text +
                          "\": " + e.what());
    } catch (const DomainError& e) {
      throw ScenarioError("source \"" + source.name + "\", entry \"" + text +
                          "\": " + e.what());
    }
  }
  if (bba.empty() || bba.total_mass() <= 0.0)
    throw ScenarioError("source \"" + source.name +
                        "\" declares no positive mass");
  return bba;
}

}  // namespace detail

/// Parses and validates a scenario document (see docs/scenario_format.md
/// for the schema). Sources whose masses do not sum to 1 are normalized
/// in place and reported through `warnings`.
inline Scenario parse_scenario(const std::string& text,
                               std::vector<std::string>* warnings = nullptr) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }

  try {
    const auto& frame_doc = detail::field(doc, "frame", "the document");
    const auto& names_doc = detail::field(frame_doc, "atom_names", "frame");
    if (!names_doc.is_array() || names_doc.empty())
      throw ScenarioError("scenario: frame.atom_names must be a non-empty array");
    std::vector<std::string> atom_names;
    for (const auto& name : names_doc) {
      if (!name.is_string())
        throw ScenarioError("scenario: frame.atom_names entries must be strings");
      atom_names.push_back(name.get<std::string>());
    }
    if (frame_doc.contains("atom_count") &&
        frame_doc.at("atom_count").get<std::size_t>() != atom_names.size())
      throw ScenarioError("scenario: frame.atom_count disagrees with atom_names");
    FrameSpec frame(std::move(atom_names));

    const std::string lattice_name =
        detail::field(doc, "lattice", "the document").get<std::string>();
    const auto lattice_kind = lattice_kind_from_name(lattice_name);
    if (!lattice_kind) {
      std::vector<std::string> valid;
      for (LatticeKind kind : all_lattice_kinds()) valid.push_back(to_string(kind));
      throw ScenarioError("scenario: unknown lattice \"" + lattice_name +
                          "\"; valid lattices: " + detail::joined_names(valid));
    }

    const std::string rule_name =
        detail::field(doc, "rule", "the document").get<std::string>();
    const auto rule = referee_kind_from_name(rule_name);
    if (!rule) {
      std::vector<std::string> valid;
      for (RefereeKind kind : all_referee_kinds()) valid.push_back(to_string(kind));
      throw ScenarioError("scenario: unknown rule \"" + rule_name +
                          "\"; valid rules: " + detail::joined_names(valid));
    }

    const auto& sources_doc = detail::field(doc, "sources", "the document");
    if (!sources_doc.is_array() || sources_doc.empty())
      throw ScenarioError("scenario: sources must be a non-empty array");
    std::vector<SourceSpec> sources;
    for (std::size_t i = 0; i < sources_doc.size(); ++i) {
      const auto& source_doc = sources_doc.at(i);
      SourceSpec source;
      source.name = source_doc.contains("name")
                        ? source_doc.at("name").get<std::string>()
                        : "source " + std::to_string(i + 1);
      const auto& masses_doc = detail::field(source_doc, "masses",
                                             ("source \"" + source.name + "\"").c_str());
      if (!masses_doc.is_array() || masses_doc.empty())
        throw ScenarioError("scenario: source \"" + source.name +
                            "\" needs a non-empty masses array");
      for (const auto& entry : masses_doc) {
        const std::string prop =
            detail::field(entry, "prop", "a mass entry").get<std::string>();
        const double mass =
            detail::field(entry, "mass", "a mass entry").get<double>();
        source.masses.emplace_back(prop, mass);
      }
      sources.push_back(std::move(source));
    }

    const auto& engine_doc = detail::field(doc, "engine", "the document");
    const std::string engine_type =
        detail::field(engine_doc, "type", "engine").get<std::string>();
    EngineConfig engine;
    if (engine_type == "exact") {
      ExactEngine exact;
      if (engine_doc.contains("max_focals")) {
        exact.max_focals = engine_doc.at("max_focals").get<std::size_t>();
        if (*exact.max_focals < 1)
          throw ScenarioError("scenario: engine.max_focals must be at least 1");
      }
      engine = exact;
    } else if (engine_type == "sample") {
      SampledEngine sampled;
      sampled.sample_count =
          detail::field(engine_doc, "n", "engine").get<std::uint64_t>();
      sampled.seed =
          detail::field(engine_doc, "seed", "engine").get<std::uint64_t>();
      if (sampled.sample_count < 1)
        throw ScenarioError("scenario: engine.n must be at least 1");
      engine = sampled;
    } else {
      throw ScenarioError("scenario: unknown engine type \"" + engine_type +
                          "\"; valid types: exact, sample");
    }

    Scenario scenario{std::move(frame), *lattice_kind, std::move(sources),
                      *rule, engine};

    // Validate expressions and masses now, and normalize the declared
    // numbers so the stored scenario is ready to run.
    Lattice lattice = make_lattice(scenario.lattice, scenario.frame);
    for (SourceSpec& source : scenario.sources) {
      const double total =
          detail::accumulate_source(lattice, source).total_mass();
      if (std::abs(total - 1.0) > kNormalizationTolerance) {
        if (warnings) {
          std::ostringstream message;
          message << "source \"" << source.name << "\" masses sum to " << total
                  << "; normalizing";
          warnings->push_back(message.str());
        }
        for (auto& [expr_text, mass] : source.masses) mass /= total;
      }
    }
    return scenario;
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
}

/// Reads and parses a scenario file.
inline Scenario load_scenario(const std::filesystem::path& path,
                              std::vector<std::string>* warnings = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ScenarioError("cannot open scenario file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), warnings);
}

/// Builds the lattice and source assignments and runs the requested
/// engine.
inline FusionResult run_scenario(const Scenario& scenario) {
  Lattice lattice = make_lattice(scenario.lattice, scenario.frame);
  std::vector<MassAssignment> sources;
  sources.reserve(scenario.sources.size());
  for (const SourceSpec& source : scenario.sources)
    sources.push_back(normalize(detail::accumulate_source(lattice, source)));
  return fuse(sources, scenario.rule, scenario.engine);
}

enum class OutputMode { Text, Machine };

inline std::optional<OutputMode> output_mode_from_name(const std::string& name) {
  if (name == "text") return OutputMode::Text;
  if (name == "machine") return OutputMode::Machine;
  return std::nullopt;
}

namespace detail {

inline std::string fixed12(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12f", value);
  return buffer;
}

inline double round12(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return std::strtod(buffer, nullptr);
}

inline std::vector<std::pair<Proposition, double>> masses_by_weight(
    const MassAssignment& fused) {
  std::vector<std::pair<Proposition, double>> masses(fused.entries().begin(),
                                                     fused.entries().end());
  // Descending mass; the underlying canonical order breaks ties.
  std::stable_sort(masses.begin(), masses.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return masses;
}

}  // namespace detail

/// Renders a fusion result. Text mode prints one "proposition<TAB>mass"
/// line per focal (heaviest first, canonical order on ties), then the
/// rejection rate and a '#'-prefixed diagnostics line, all with 12
/// fractional digits. Machine mode emits one JSON document with masses
/// rounded to 12 significant digits.
inline std::string format_output(const FusionResult& result, OutputMode mode) {
  const auto masses = detail::masses_by_weight(result.fused);
  const FusionDiagnostics& diag = result.diagnostics;
  if (mode == OutputMode::Text) {
    std::string out;
    for (const auto& [prop, mass] : masses)
      out += render(prop) + "\t" + detail::fixed12(mass) + "\n";
    out += "rejection_rate\t" + detail::fixed12(result.rejection_rate) + "\n";
    out += std::string("# engine=") + diag.engine_name();
    if (diag.sampled) {
      out += " samples_drawn=" + std::to_string(diag.samples_drawn);
      out += " samples_rejected=" + std::to_string(diag.samples_rejected);
    } else {
      out += " tuples_enumerated=" + std::to_string(diag.tuples_enumerated);
    }
    out += std::string(" relax_applied=") + (diag.relax_applied ? "true" : "false");
    out += "\n";
    return out;
  }

  nlohmann::ordered_json doc;
  doc["lattice"] = to_string(result.fused.lattice().kind());
  doc["rule"] = to_string(result.rule);
  nlohmann::ordered_json engine;
  if (const auto* exact = std::get_if<ExactEngine>(&result.engine)) {
    engine["type"] = "exact";
    if (exact->max_focals) engine["max_focals"] = *exact->max_focals;
  } else {
    const auto& sampled = std::get<SampledEngine>(result.engine);
    engine["type"] = "sample";
    engine["n"] = sampled.sample_count;
    engine["seed"] = sampled.seed;
  }
  doc["engine"] = std::move(engine);
  nlohmann::ordered_json mass_list = nlohmann::ordered_json::array();
  for (const auto& [prop, mass] : masses) {
    nlohmann::ordered_json entry;
    entry["prop"] = render(prop);
    entry["mass"] = detail::round12(mass);
    mass_list.push_back(std::move(entry));
  }
  doc["masses"] = std::move(mass_list);
  doc["rejection_rate"] = detail::round12(result.rejection_rate);
  nlohmann::ordered_json diagnostics;
  diagnostics["engine"] = diag.engine_name();
  if (diag.sampled) {
    diagnostics["samples_drawn"] = diag.samples_drawn;
    diagnostics["samples_rejected"] = diag.samples_rejected;
  } else {
    diagnostics["tuples_enumerated"] = diag.tuples_enumerated;
    diagnostics["pre_normalization_mass"] = detail::round12(diag.pre_normalization_mass);
  }
  diagnostics["relax_applied"] = diag.relax_applied;
  doc["diagnostics"] = std::move(diagnostics);
  return doc.dump(2) + "\n";
}

}  // namespace evfusion
