#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace vchild::stats {

inline constexpr int kAsaqMin = -3;
inline constexpr int kAsaqMax = 3;

struct AsaqItem {
  std::string id;
  std::string construct;
  bool reverse = false;
};

/// Item key: which construct each item belongs to and whether it is reverse-keyed.
struct AsaqKey {
  std::vector<AsaqItem> items;

  const AsaqItem* find(const std::string& id) const;
  /// Throws InvalidInput on duplicate or empty ids.
  void check() const;
};

/// CSV with header `item,construct,reverse` (reverse is 0/1).
AsaqKey load_asaq_key(const std::filesystem::path& path);

/// One respondent: item id -> raw response on the -3..+3 scale.
using AsaqResponse = std::map<std::string, int>;

/// Reverse-keyed items are mirrored around 0 on the symmetric scale.
constexpr int reverse_item(int score) noexcept { return -score; }

struct AsaqReport {
  std::vector<std::map<std::string, double>> respondent_constructs;  // per respondent
  std::map<std::string, double> construct_means;  // mean over respondents
  std::map<std::string, double> item_means;       // after reversal
  double overall_item_mean = 0.0;
  long short_score = 0;  // sum of item means, rounded half away from zero
};

/// Scores respondents against `key`. Throws MissingItems when a key item
/// has no response and OutOfScale for responses outside -3..+3.
AsaqReport asaq_score(const std::vector<AsaqResponse>& responses, const AsaqKey& key);

}  // namespace vchild::stats
