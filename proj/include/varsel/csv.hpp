#pragma once

#include <string>
#include <vector>

#include "varsel/dataset.hpp"

namespace varsel {

// Loads a comma-separated file with a header row. The named response column
// becomes y; every other column becomes a base predictor. Columns listed in
// binary_columns get is_binary set and must take at most two distinct values.
Dataset load_csv(const std::string& path, const std::string& response,
                 const std::vector<std::string>& binary_columns = {});

}  // namespace varsel
