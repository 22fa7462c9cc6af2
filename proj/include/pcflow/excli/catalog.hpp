#pragma once

#include <string>
#include <vector>

#include "pcflow/excli/config.hpp"

namespace pcflow::excli {

struct CatalogEntry {
  std::string name;
  std::string summary;
  std::string text;  // ini source
};

const std::vector<CatalogEntry>& catalog();
/// Throws ConfigError for unknown names.
const CatalogEntry& catalog_entry(const std::string& name);
ExperimentConfig catalog_config(const std::string& name);

}  // namespace pcflow::excli
