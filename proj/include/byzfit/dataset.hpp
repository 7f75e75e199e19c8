#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "byzfit/multipoly.hpp"
#include "byzfit/scalar.hpp"

namespace byzfit {

enum class Label { Clean, Noisy, Corrupt };

const char* label_name(Label l);
Label label_from_name(const std::string& s);

// Ordered sample points: k coordinates plus one value per row, all in one
// computation field, with optional provenance metadata for synthetic data.
struct DataSet {
  int k = 1;
  Field field = Field::rational();
  std::vector<std::vector<Scalar>> xs;
  std::vector<Scalar> zs;

  // Metadata. labels is empty or sized like zs; origin maps each row to its
  // index in the dataset it was filtered/subset from (empty = identity).
  std::vector<Label> labels;
  std::vector<size_t> origin;
  std::optional<MultiPoly> truth;
  uint64_t seed = 0;

  size_t size() const { return zs.size(); }
  void validate() const;  // throws std::invalid_argument on malformed data

  size_t origin_index(size_t row) const {
    return origin.empty() ? row : origin[row];
  }
  // Row subset preserving field/truth/seed; labels follow rows and origin
  // composes, so filtered sets keep pointing at the original rows.
  DataSet subset(const std::vector<size_t>& rows) const;

  // True when the given axis has pairwise-distinct coordinates.
  bool distinct_along(int axis) const;
  // Axis with the most distinct values (for decoder error hints).
  int most_distinct_axis() const;
};

// CSV with header x1,...,xk,z plus a sidecar JSON manifest
// (<stem>.manifest.json) carrying field/labels/truth/seed.
void write_dataset(const DataSet& ds, const std::string& csv_path);
DataSet read_dataset(const std::string& csv_path);
std::string manifest_path_for(const std::string& csv_path);

}  // namespace byzfit
