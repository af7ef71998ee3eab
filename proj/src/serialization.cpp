#include "polycoho/serialization.hpp"

#include "polycoho/error.hpp"

namespace polycoho {

namespace {

template <class F>
auto parse_guard(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

}  // namespace

nlohmann::json parameters_to_json(const ParameterMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < 3; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.entries().cols(); ++c) row.push_back(m.entries()(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return {{"n", m.rank().n()}, {"field", m.field().to_string()}, {"entries", std::move(rows)}};
}

ParameterMatrix parameters_from_json(const nlohmann::json& j) {
  return parse_guard([&] {
    const PolygonRank rank(j.at("n").get<int>());
    const Field field = Field::parse(j.at("field").get<std::string>());
    const auto& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != 3) throw Error(ErrorCode::Parse, "entries must have 3 rows");
    Matrix e(3, rank.label_count(), field);
    for (std::size_t r = 0; r < 3; ++r) {
      if (!rows[r].is_array() || rows[r].size() != e.cols()) {
        throw Error(ErrorCode::Parse, "entries row " + std::to_string(r) + " must have " +
                                          std::to_string(e.cols()) + " values");
      }
      for (std::size_t c = 0; c < e.cols(); ++c) e(r, c) = Scalar::parse(field, rows[r][c].get<std::string>());
    }
    return ParameterMatrix(rank, std::move(e));
  });
}

nlohmann::json coloring_to_json(const Coloring& c) {
  nlohmann::json j = nlohmann::json::object();
  for (const Face& f : all_faces(c.rank())) j[f.to_string()] = c.at(f).to_string();
  return j;
}

Coloring coloring_from_json(PolygonRank rank, Field field, const nlohmann::json& j) {
  return parse_guard([&] {
    Coloring c(rank, field);
    for (const Face& f : all_faces(rank)) c.at(f) = Scalar::parse(field, j.at(f.to_string()).get<std::string>());
    if (j.size() != static_cast<std::size_t>(rank.face_count()))
      throw Error(ErrorCode::Parse, "coloring has unknown face keys");
    return c;
  });
}

nlohmann::json rank_table_to_json(const RankTable& t) {
  return {{"n", t.n},
          {"dims", {t.dims[0], t.dims[1], t.dims[2]}},
          {"rank_low", t.rank_low},
          {"rank_high", t.rank_high},
          {"middle_cohomology_dim", t.middle_cohomology_dim}};
}

RankTable rank_table_from_json(const nlohmann::json& j) {
  return parse_guard([&] {
    RankTable t;
    t.n = j.at("n").get<int>();
    const auto& d = j.at("dims");
    for (std::size_t k = 0; k < 3; ++k) t.dims[k] = d.at(k).get<std::size_t>();
    t.rank_low = j.at("rank_low").get<std::size_t>();
    t.rank_high = j.at("rank_high").get<std::size_t>();
    t.middle_cohomology_dim = j.at("middle_cohomology_dim").get<std::size_t>();
    return t;
  });
}

}  // namespace polycoho
