#include "vchild/stats/asaq.hpp"

#include <cmath>
#include <set>

#include "vchild/error.hpp"
#include "vchild/stats/table.hpp"

namespace vchild::stats {

const AsaqItem* AsaqKey::find(const std::string& id) const {
  for (const auto& item : items) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

void AsaqKey::check() const {
  if (items.empty()) throw Error(Errc::InvalidInput, "ASAQ key has no items");
  std::set<std::string> ids;
  for (const auto& item : items) {
    if (item.id.empty() || item.construct.empty()) throw Error(Errc::InvalidInput, "ASAQ key has an empty field");
    if (!ids.insert(item.id).second) throw Error(Errc::InvalidInput, "duplicate ASAQ item '" + item.id + "'");
  }
}

AsaqKey load_asaq_key(const std::filesystem::path& path) {
  Table t = read_csv(path);
  const std::size_t ci = t.column("item"), cc = t.column("construct"), cr = t.column("reverse");
  AsaqKey key;
  for (const auto& row : t.rows) {
    const std::string& rev = row.at(cr);
    if (rev != "0" && rev != "1") throw Error(Errc::InvalidInput, "reverse flag must be 0 or 1");
    key.items.push_back({row.at(ci), row.at(cc), rev == "1"});
  }
  key.check();
  return key;
}

AsaqReport asaq_score(const std::vector<AsaqResponse>& responses, const AsaqKey& key) {
  key.check();
  if (responses.empty()) throw Error(Errc::InvalidInput, "no ASAQ respondents");

  AsaqReport report;
  std::map<std::string, double> item_sums;
  std::map<std::string, double> construct_sums;

  for (std::size_t r = 0; r < responses.size(); ++r) {
    std::map<std::string, std::pair<double, int>> acc;
    for (const auto& item : key.items) {
      auto it = responses[r].find(item.id);
      if (it == responses[r].end()) {
        throw Error(Errc::MissingItems, "respondent " + std::to_string(r + 1) + " is missing item '" + item.id + "'");
      }
      if (it->second < kAsaqMin || it->second > kAsaqMax) {
        throw Error(Errc::OutOfScale, "item '" + item.id + "' response " + std::to_string(it->second) +
                                          " outside -3..+3");
      }
      const double v = item.reverse ? reverse_item(it->second) : it->second;
      item_sums[item.id] += v;
      acc[item.construct].first += v;
      acc[item.construct].second += 1;
    }
    std::map<std::string, double> constructs;
    for (const auto& [name, sc] : acc) {
      constructs[name] = sc.first / sc.second;
      construct_sums[name] += constructs[name];
    }
    report.respondent_constructs.push_back(std::move(constructs));
  }

  const double n = static_cast<double>(responses.size());
  double total = 0.0;
  for (const auto& [id, sum] : item_sums) {
    report.item_means[id] = sum / n;
    total += sum / n;
  }
  for (const auto& [name, sum] : construct_sums) report.construct_means[name] = sum / n;
  report.overall_item_mean = total / static_cast<double>(key.items.size());
  report.short_score = std::lround(total);
  return report;
}

}  // namespace vchild::stats
