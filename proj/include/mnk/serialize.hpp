#pragma once
// JSON views of the library's results.  Field names are the stable report
// contract documented in the README.

#include <json.hpp>

#include "mnk/complex.hpp"
#include "mnk/groups.hpp"
#include "mnk/realization.hpp"
#include "mnk/symmetry.hpp"
#include "mnk/tilt.hpp"

namespace mnk {

using json = nlohmann::ordered_json;

inline json to_json(const MinkVec& v) { return json::array({v[0], v[1], v[2], v[3]}); }

inline json to_json(const Perm4& p) { return json::array({p[0], p[1], p[2], p[3]}); }

inline json to_json(const ValidationReport& r) {
  return {{"verdict", r.verdict},
          {"h_outside", r.h_outside},
          {"r_outside", r.r_outside},
          {"ultraparallel", r.ultraparallel},
          {"polar_orthogonal", r.polar_orthogonal},
          {"planarity_residual", r.planarity_residual},
          {"edge_length_residual", r.edge_length_residual},
          {"angle_sum_residual", r.angle_sum_residual},
          {"unit_norm_residual", r.unit_norm_residual},
          {"twist_residual", r.twist_residual},
          {"polar_residual", r.polar_residual},
          {"min_pole_separation", r.min_pole_separation},
          {"failures", r.failures}};
}

inline json realization_json(const Realization& real, const ValidationReport& rep) {
  const auto& p = real.params;
  const auto rel = relation_residuals(p);
  const auto ang = dihedral_angles(real);
  return {{"n", p.n},
          {"case", to_string(p.case_tag)},
          {"c_n", p.c_n},
          {"h", p.h},
          {"r", p.r},
          {"sin_theta", p.sin_theta},
          {"theta", p.theta},
          {"vertices",
           {{"tau", to_json(real.tau)},
            {"upsilon", to_json(real.upsilon)},
            {"alpha", to_json(real.alpha)},
            {"delta", to_json(real.delta)},
            {"alpha_prime", to_json(real.alpha_prime)}}},
          {"normals",
           {{"beta", to_json(real.beta)},
            {"gamma", to_json(real.gamma)},
            {"epsilon", to_json(real.epsilon)},
            {"phi", to_json(real.phi)}}},
          {"angles", {{"xi", ang.xi}, {"zeta", ang.zeta}, {"axis", ang.axis}, {"diagonal", ang.diagonal}}},
          {"edge_lengths",
           {{"a0", edge_length(real, TruncatedEdge::A0)}, {"b0", edge_length(real, TruncatedEdge::B0)}}},
          {"relation_residuals",
           {{"coplanarity", rel.coplanarity}, {"edge_length", rel.edge_length}, {"angle_sum", rel.angle_sum}}},
          {"validation", to_json(rep)}};
}

inline json to_json(const TiltVector& t) {
  json j{{"t_beta", t.t_beta}, {"t_gamma", t.t_gamma}, {"t_epsilon", t.t_epsilon}, {"t_phi", t.t_phi}};
  if (t.method == TiltMethod::ClosedForm) {
    j["H2"] = t.H2;
    j["H3"] = t.H3;
  }
  return j;
}

inline json tilts_json(const Realization& real) {
  const auto v = canonicality_verdict(real);
  json gram = json::array();
  for (const auto& row : gram_matrix(real)) gram.push_back(json::array({row[0], row[1], row[2], row[3]}));
  return {{"n", real.params.n},
          {"gram_matrix", gram},
          {"gram", to_json(v.gram)},
          {"phi_equals_epsilon", to_json(tilts_from_gram(real, NormalConvention::PhiEqualsEpsilon))},
          {"closed_form", to_json(v.closed_form)},
          {"margin", v.margin},
          {"is_canonical", v.is_canonical},
          {"residual_direct", v.residual_direct},
          {"residual_phi_equals_epsilon", v.residual_phi_eps},
          {"matching_convention",
           v.matching_convention ? json(to_string(*v.matching_convention)) : json(nullptr)}};
}

inline json to_json(const BoundarySurface& s) {
  return {{"vertices", s.vertices},
          {"edges", s.edges},
          {"faces", s.faces},
          {"euler_characteristic", s.euler_characteristic},
          {"components", s.components},
          {"genus", s.genus},
          {"orientable", s.is_orientable}};
}

inline json decomposition_json(const Decomposition& dec) {
  const CubeLabels L{dec.n};
  json pieces = json::array();
  for (int j = 0; j < dec.num_pieces(); ++j) {
    json names = json::array();
    for (int g : dec.piece_vertices[j]) names.push_back(L.name(g));
    pieces.push_back({{"index", j}, {"vertices", names}});
  }
  json pairings = json::array();
  for (const auto& p : dec.pairings)
    pairings.push_back({{"kind", to_string(p.kind)},
                        {"from", {{"piece", p.from.piece}, {"face", p.from.face}}},
                        {"to", {{"piece", p.to.piece}, {"face", p.to.face}}},
                        {"vertex_map", to_json(p.vertex_map)}});
  const auto classes = edge_classes(dec);
  json cls = json::array();
  for (const auto& c : classes) {
    json wedges = json::array();
    for (const auto& w : c.wedges)
      wedges.push_back({{"piece", w.piece},
                        {"edge", json::array({kEdges[w.edge].first, kEdges[w.edge].second})},
                        {"role", to_string(wedge_role(w.edge))}});
    cls.push_back({{"kind", to_string(c.kind)},
                   {"wedge_count", c.wedge_count},
                   {"distinct_piece_count", c.distinct_piece_count},
                   {"wedges", wedges}});
  }
  json arc;
  if (dec.n % 3 == 0) {
    const Arcs a = arcs(dec, classes);
    arc = {{"e0", a.e0}, {"e1", a.e[0]}, {"e2", a.e[1]}, {"e3", a.e[2]}};
  } else {
    arc = {{"e0", axis_class(classes)}, {"single", merged_class(dec, classes)}};
  }
  return {{"n", dec.n},
          {"k", dec.k},
          {"pieces", pieces},
          {"face_pairings", pairings},
          {"edge_classes", cls},
          {"arcs", arc},
          {"boundary", to_json(boundary_surface(dec))}};
}

inline json seed_json(const Seed& s) { return {{"piece", s.piece}, {"perm", to_json(s.perm)}}; }

inline json to_json(const CombIso& g) {
  json maps = json::array();
  for (const auto& m : g.vertex_maps) maps.push_back(to_json(m));
  return {{"piece_map", g.piece_map}, {"vertex_maps", maps}};
}

/// The group as permutations of the 4 * 2n vertex slots (slot = 4 * piece + label).
inline json permutation_group_json(const AutGroupData& aut) {
  json elems = json::array();
  for (const auto& g : aut.elements) {
    json slots = json::array();
    for (std::size_t j = 0; j < g.piece_map.size(); ++j)
      for (int v = 0; v < 4; ++v) slots.push_back(4 * g.piece_map[j] + g.vertex_maps[j][v]);
    elems.push_back(slots);
  }
  return {{"degree", 8 * aut.n}, {"order", aut.order}, {"elements", elems}};
}

inline json to_json(const EnumerationResult& e) {
  json j{{"status", e.status == EnumerationStatus::Completed ? "Completed" : "CapExceeded"},
         {"cosets_defined", e.cosets_defined}};
  j["order"] = e.status == EnumerationStatus::Completed ? json(e.order) : json(nullptr);
  return j;
}

inline json presentation_json(const PresentedGroup& g) {
  json rels = json::array();
  for (const auto& r : g.relators)
    rels.push_back({{"source", r.source}, {"word", format_word(r.word, g.generators)}});
  return {{"text", serialize_presentation(g)}, {"provenance", g.provenance}, {"relators", rels}};
}

inline json to_json(const IsomorphismCertificate& c) {
  json assign = json::object();
  for (const auto& [name, seed] : c.assignment) assign[name] = seed_json(seed);
  json rels = json::array();
  for (const auto& r : c.relators) rels.push_back({{"source", r.source}, {"word", r.word}, {"holds", r.holds}});
  return {{"assignment", assign},
          {"relators", rels},
          {"generated_order", c.generated_order},
          {"surjective", c.surjective},
          {"enumeration", to_json(c.enumeration)},
          {"aut_order", c.aut_order},
          {"order_match", c.order_match},
          {"verdict", c.verdict}};
}

inline json to_json(const CandidateReport& rep) {
  json maps = json::array();
  for (const auto& c : rep.maps)
    maps.push_back({{"index", c.index},
                    {"seed", seed_json(c.seed)},
                    {"targets", c.targets},
                    {"automorphism", c.automorphism}});
  json ids = json::array();
  for (const auto& i : rep.identities) ids.push_back({{"name", i.name}, {"checked", i.checked}, {"holds", i.holds}});
  return {{"maps", maps}, {"identities", ids}, {"outside_dihedral_cosets", rep.outside_coset_count}};
}

}  // namespace mnk
