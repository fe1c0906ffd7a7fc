#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace psnads {

struct Level {
    std::string label;
    double bohr_frequency = 0.0;  // omega_j, rad/time
    double damping = 0.0;         // gamma_j, 1/time, >= 0
    double initial_phase = 0.0;   // phi_j, rad
};

/// Bare-state level structure with real scalar dipole couplings.
/// Level 0 is the designated ground state.
class LevelSystem {
public:
    LevelSystem(std::vector<Level> levels,
                std::map<std::pair<int, int>, double> dipoles);

    int size() const { return static_cast<int>(levels_.size()); }
    const Level& level(int j) const { return levels_.at(static_cast<std::size_t>(j)); }
    const std::vector<Level>& levels() const { return levels_; }

    /// mu_jk (symmetric); 0 when the pair is not dipole-coupled.
    double dipole(int j, int k) const;

    const std::map<std::pair<int, int>, double>& dipoles() const { return dipoles_; }

    /// True when couplings connect level 0 to excited levels only (Fig.-2
    /// style ladder; trivially true for two levels coupled 0-1).
    bool is_ladder() const;

    /// Excited indices coupled to the ground level, ascending.
    std::vector<int> coupled_excited() const;

private:
    std::vector<Level> levels_;
    std::map<std::pair<int, int>, double> dipoles_;  // keys normalized (min, max)
};

}  // namespace psnads
