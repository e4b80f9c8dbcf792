#include "vformation/report.hpp"

#include <json.hpp>

#include "vformation/io.hpp"

namespace vform {

namespace {

using Json = nlohmann::ordered_json;

Json wing_json(const WingSpec& w) {
  return Json{{"span", w.span},
              {"root_chord", w.root_chord},
              {"taper", w.taper_ratio},
              {"sweep", w.sweep_deg},
              {"dihedral", w.dihedral_deg},
              {"incidence", w.incidence_deg},
              {"camber_m", w.camber.max_camber},
              {"camber_p", w.camber.position},
              {"n_span", w.n_span},
              {"n_chord", w.n_chord}};
}

}  // namespace

std::string render_metadata(const RunMetadata& meta) {
  Json j;
  j["run_id"] = meta.run_id;
  j["command"] = meta.command;
  j["version"] = std::string(version());
  Json wings = Json::array();
  for (const auto& m : meta.layout.members) {
    Json e{{"id", m.id}, {"role", std::string(to_string(m.role()))}, {"wing", wing_json(m.wing)}};
    if (m.role() == Role::Trailing) {
      e["offset"] = Json{{"reference", m.reference},
                         {"side", std::string(to_string(m.side))},
                         {"streamwise", m.offset.streamwise},
                         {"spanwise", m.offset.spanwise},
                         {"vertical", m.offset.vertical}};
    }
    wings.push_back(std::move(e));
  }
  j["wings"] = std::move(wings);
  j["flight"] = Json{{"speed", meta.condition.speed},
                     {"density", meta.condition.density},
                     {"alpha", meta.condition.alpha_deg}};
  j["solver"] = Json{{"core", meta.solver.core_fraction},
                     {"interference_core", meta.solver.interference_core_fraction},
                     {"upwash_locus", std::string(to_string(meta.locus))},
                     {"linear_solver", "dense partial-pivot LU"},
                     {"wake", "straight semi-infinite, along +x"},
                     {"moment_reference", "root quarter-chord of each wing"}};
  Json settings = Json::object();
  for (const auto& [k, v] : meta.settings) settings[k] = v;
  j["settings"] = std::move(settings);
  j["files"] = meta.files;
  return j.dump(2) + "\n";
}

std::string compute_run_id(const RunMetadata& meta) {
  RunMetadata blank = meta;
  blank.run_id.clear();
  return hex64(fnv1a64(render_metadata(blank)));
}

}  // namespace vform
