#include "serialize.hpp"

#include <json.hpp>

#include "errors.hpp"

namespace affina {

using json = nlohmann::json;

namespace {

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Coeff c : v) a.push_back(c);
  return a;
}

json flat_to_json(const Flat& fl) {
  json basis = json::array();
  for (const Vec& row : fl.direction().basis()) basis.push_back(vec_to_json(row));
  return json{{"basis", basis}, {"point", vec_to_json(fl.representative())}};
}

std::uint32_t get_u32(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw ParseError(std::string("family JSON: missing or invalid \"") + key + "\"");
  return static_cast<std::uint32_t>(j[key].get<long long>());
}

Vec parse_vec(const json& j, std::uint32_t n, std::uint32_t q, const std::string& where) {
  if (!j.is_array() || j.size() != n)
    throw ParseError(where + ": expected an array of " + std::to_string(n) + " entries");
  Vec v(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!j[i].is_number_integer())
      throw ParseError(where + ": entry " + std::to_string(i) + " is not an integer");
    long long e = j[i].get<long long>();
    if (e < 0 || e >= static_cast<long long>(q))
      throw ParseError(where + ": entry " + std::to_string(i) + " = " + std::to_string(e) +
                       " is outside 0.." + std::to_string(q - 1));
    v[i] = static_cast<Coeff>(e);
  }
  return v;
}

}  // namespace

std::string family_to_json(const FlatFamily& fam, int indent) {
  json flats = json::array();
  for (const Flat& fl : fam.members()) flats.push_back(flat_to_json(fl));
  json doc{{"q", fam.q()}, {"n", fam.ambient_dim()}, {"k", fam.k()}, {"flats", flats}};
  return doc.dump(indent);
}

FlatFamily family_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("family JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("family JSON: top level must be an object");
  std::uint32_t q = get_u32(doc, "q");
  std::uint32_t n = get_u32(doc, "n");
  std::uint32_t k = get_u32(doc, "k");
  FieldSpec f = [&] {
    try {
      return FieldSpec(q);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("family JSON: ") + e.what());
    }
  }();
  if (k > n) throw ParseError("family JSON: k exceeds n");
  if (!doc.contains("flats") || !doc["flats"].is_array())
    throw ParseError("family JSON: missing or invalid \"flats\" array");

  FlatFamily fam(f, n, k);
  std::size_t idx = 0;
  for (const json& jf : doc["flats"]) {
    const std::string where = "flat #" + std::to_string(idx);
    if (!jf.is_object() || !jf.contains("basis") || !jf.contains("point"))
      throw ParseError(where + ": expected an object with \"basis\" and \"point\"");
    if (!jf["basis"].is_array())
      throw ParseError(where + ": \"basis\" must be an array of rows");
    std::vector<Vec> rows;
    std::size_t r = 0;
    for (const json& jr : jf["basis"])
      rows.push_back(parse_vec(jr, n, q, where + ", basis row " + std::to_string(r++)));
    Subspace dir(f, n, rows);
    if (dir.dim() != rows.size())
      throw ParseError(where + ": basis rows are linearly dependent (rank " +
                       std::to_string(dir.dim()) + " from " + std::to_string(rows.size()) +
                       " rows)");
    if (dir.basis() != rows)
      throw ParseError(where + ": basis is not in reduced row echelon form");
    if (dir.dim() != k)
      throw ParseError(where + ": basis has rank " + std::to_string(dir.dim()) + ", expected k = " +
                       std::to_string(k));
    Vec point = parse_vec(jf["point"], n, q, where + ", point");
    Flat fl = Flat::through(dir, point);
    if (fl.representative() != point)
      throw ParseError(where + ": point is not the canonical representative (expected zeros at "
                       "the basis pivot columns)");
    if (!fam.add(fl)) throw ParseError(where + ": duplicate of an earlier flat");
    ++idx;
  }
  return fam;
}

std::string family_stats_to_json(const FamilyStats& st, int indent) {
  json doc{{"size", st.size}, {"intersecting", st.intersecting},
           {"pencil_bound", st.pencil_bound.str()},
           {"le_pencil_bound", BigCount(st.size) <= st.pencil_bound}};
  if (st.hm_bound) {
    doc["hm_bound"] = st.hm_bound->str();
    doc["le_hm_bound"] = BigCount(st.size) <= *st.hm_bound;
  }
  if (st.tau) {
    json t{{"nodes", st.tau->nodes}};
    if (st.tau->status == TauResult::Status::Exact) {
      t["value"] = st.tau->value;
      t["exact"] = true;
      if (st.tau->witness) t["witness"] = flat_to_json(*st.tau->witness);
    } else {
      t["lower_bound"] = st.tau->value;
      t["exact"] = false;
    }
    doc["tau"] = t;
  }
  return doc.dump(indent);
}

std::string search_outcome_to_json(const SearchOutcome& out, int indent) {
  json doc{{"size", out.best.size()},
           {"optimal", out.optimal},
           {"nodes", out.nodes},
           {"family", json::parse(family_to_json(out.best, -1))}};
  return doc.dump(indent);
}

}  // namespace affina
