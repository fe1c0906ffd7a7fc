#include "psnads/level_system.hpp"

#include <algorithm>

#include "psnads/errors.hpp"

namespace psnads {

LevelSystem::LevelSystem(std::vector<Level> levels,
                         std::map<std::pair<int, int>, double> dipoles)
    : levels_(std::move(levels)) {
    if (levels_.size() < 2)
        throw config_error("system needs at least 2 levels");
    for (std::size_t j = 0; j < levels_.size(); ++j) {
        if (levels_[j].damping < 0.0)
            throw config_error("damping gamma must be >= 0 (level " +
                               std::to_string(j) + ")");
    }
    const int n = size();
    for (const auto& [pair, mu] : dipoles) {
        auto [j, k] = pair;
        if (j == k)
            throw config_error("dipole coupling cannot be diagonal (level " +
                               std::to_string(j) + ")");
        if (j < 0 || k < 0 || j >= n || k >= n)
            throw config_error("dipole coupling references unknown level");
        dipoles_[{std::min(j, k), std::max(j, k)}] = mu;
    }
}

double LevelSystem::dipole(int j, int k) const {
    auto it = dipoles_.find({std::min(j, k), std::max(j, k)});
    return it == dipoles_.end() ? 0.0 : it->second;
}

bool LevelSystem::is_ladder() const {
    for (const auto& [pair, mu] : dipoles_) {
        if (pair.first != 0 && mu != 0.0) return false;
    }
    return true;
}

std::vector<int> LevelSystem::coupled_excited() const {
    std::vector<int> out;
    for (const auto& [pair, mu] : dipoles_) {
        if (pair.first == 0 && mu != 0.0) out.push_back(pair.second);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace psnads
