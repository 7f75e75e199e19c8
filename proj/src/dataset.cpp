#include "byzfit/dataset.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "byzfit/json_io.hpp"

namespace byzfit {

const char* label_name(Label l) {
  switch (l) {
    case Label::Clean: return "clean";
    case Label::Noisy: return "noisy";
    case Label::Corrupt: return "corrupt";
  }
  return "?";
}

Label label_from_name(const std::string& s) {
  if (s == "clean") return Label::Clean;
  if (s == "noisy") return Label::Noisy;
  if (s == "corrupt") return Label::Corrupt;
  throw std::invalid_argument("unknown label: " + s);
}

void DataSet::validate() const {
  if (k < 1) throw std::invalid_argument("DataSet: k >= 1 required");
  if (xs.size() != zs.size()) throw std::invalid_argument("DataSet: |xs| != |zs|");
  if (!labels.empty() && labels.size() != zs.size())
    throw std::invalid_argument("DataSet: labels size mismatch");
  if (!origin.empty() && origin.size() != zs.size())
    throw std::invalid_argument("DataSet: origin size mismatch");
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].size() != static_cast<size_t>(k))
      throw std::invalid_argument("DataSet: row " + std::to_string(i) +
                                  " has wrong dimension");
    for (const Scalar& c : xs[i]) {
      if (c.field() != field)
        throw std::invalid_argument("DataSet: coordinate field mismatch");
    }
    if (zs[i].field() != field)
      throw std::invalid_argument("DataSet: value field mismatch");
  }
  if (truth && (truth->vars() != k || truth->field() != field))
    throw std::invalid_argument("DataSet: truth polynomial mismatch");
}

DataSet DataSet::subset(const std::vector<size_t>& rows) const {
  DataSet out;
  out.k = k;
  out.field = field;
  out.truth = truth;
  out.seed = seed;
  out.xs.reserve(rows.size());
  out.zs.reserve(rows.size());
  out.origin.reserve(rows.size());
  for (size_t r : rows) {
    if (r >= size()) throw std::invalid_argument("subset row out of range");
    out.xs.push_back(xs[r]);
    out.zs.push_back(zs[r]);
    out.origin.push_back(origin_index(r));
    if (!labels.empty()) out.labels.push_back(labels[r]);
  }
  return out;
}

bool DataSet::distinct_along(int axis) const {
  if (axis < 0 || axis >= k) throw std::invalid_argument("axis out of range");
  std::set<std::string> seen;
  for (const auto& x : xs) {
    if (!seen.insert(x[static_cast<size_t>(axis)].str()).second) return false;
  }
  return true;
}

int DataSet::most_distinct_axis() const {
  int best_axis = 0;
  size_t best = 0;
  for (int a = 0; a < k; ++a) {
    std::set<std::string> seen;
    for (const auto& x : xs) seen.insert(x[static_cast<size_t>(a)].str());
    if (seen.size() > best) {
      best = seen.size();
      best_axis = a;
    }
  }
  return best_axis;
}

std::string manifest_path_for(const std::string& csv_path) {
  std::string stem = csv_path;
  if (stem.size() >= 4 && stem.substr(stem.size() - 4) == ".csv") {
    stem = stem.substr(0, stem.size() - 4);
  }
  return stem + ".manifest.json";
}

void write_dataset(const DataSet& ds, const std::string& csv_path) {
  ds.validate();
  std::ostringstream csv;
  for (int a = 1; a <= ds.k; ++a) csv << "x" << a << ",";
  csv << "z\n";
  for (size_t i = 0; i < ds.size(); ++i) {
    for (const Scalar& c : ds.xs[i]) csv << scalar_to_string(c) << ",";
    csv << scalar_to_string(ds.zs[i]) << "\n";
  }
  write_file_atomic(csv_path, csv.str());

  nlohmann::json man;
  man["k"] = ds.k;
  man["field"] = ds.field.name();
  if (ds.field.kind == FieldKind::PrimeField) man["modulus"] = ds.field.modulus;
  man["seed"] = ds.seed;
  if (ds.truth) man["truth"] = poly_to_json(*ds.truth);
  if (!ds.labels.empty()) {
    nlohmann::json labels = nlohmann::json::array();
    for (Label l : ds.labels) labels.push_back(label_name(l));
    man["labels"] = std::move(labels);
  }
  if (!ds.origin.empty()) man["origin"] = ds.origin;
  write_file_atomic(manifest_path_for(csv_path), man.dump(2) + "\n");
}

DataSet read_dataset(const std::string& csv_path) {
  nlohmann::json man = nlohmann::json::parse(read_file(manifest_path_for(csv_path)));
  DataSet ds;
  ds.k = man.at("k").get<int>();
  std::string fname = man.at("field").get<std::string>();
  if (fname == "rational") {
    ds.field = Field::rational();
  } else if (fname == "float") {
    ds.field = Field::f64();
  } else if (fname == "gf") {
    ds.field = Field::gf(man.at("modulus").get<uint64_t>());
  } else {
    throw std::invalid_argument("unknown field in manifest: " + fname);
  }
  ds.seed = man.value("seed", uint64_t{0});
  if (man.contains("truth")) ds.truth = poly_from_json(man.at("truth"));
  if (man.contains("labels")) {
    for (const auto& l : man.at("labels")) {
      ds.labels.push_back(label_from_name(l.get<std::string>()));
    }
  }
  if (man.contains("origin")) ds.origin = man.at("origin").get<std::vector<size_t>>();

  std::istringstream csv(read_file(csv_path));
  std::string line;
  if (!std::getline(csv, line)) throw std::invalid_argument("empty CSV: " + csv_path);
  size_t row = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != static_cast<size_t>(ds.k) + 1) {
      throw std::invalid_argument("CSV row " + std::to_string(row) + " has " +
                                  std::to_string(cells.size()) + " cells, want " +
                                  std::to_string(ds.k + 1));
    }
    std::vector<Scalar> x;
    for (int a = 0; a < ds.k; ++a) {
      x.push_back(scalar_from_string(cells[static_cast<size_t>(a)], ds.field));
    }
    ds.xs.push_back(std::move(x));
    ds.zs.push_back(scalar_from_string(cells[static_cast<size_t>(ds.k)], ds.field));
    ++row;
  }
  ds.validate();
  return ds;
}

}  // namespace byzfit
