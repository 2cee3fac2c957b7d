#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tropdual/triangulation.hpp"

namespace tropdual {

struct Cell {
    int sigma = -1;
    int tau = -1;
    int a = 0;  // dim sigma
    int b = 0;  // dim tau
    int dim() const { return b - a; }
};

// Cover relation upper > lower, dim(lower) = dim(upper) - 1.
// Type 1 grows the first component, type 2 shrinks the second.
struct Cover {
    int upper = -1;
    int lower = -1;
    int type = 0;
    int eta = 1;
};

class Omega {
public:
    static Omega build(const Triangulation& T);

    const Triangulation& triangulation() const { return *T_; }
    const std::vector<Cell>& cells() const { return cells_; }
    const Cell& cell(int c) const { return cells_[c]; }
    int find(int sigma, int tau) const;
    const std::vector<Cover>& covers() const { return covers_; }
    // Covers whose upper cell is c.
    const std::vector<int>& down(int c) const { return down_[c]; }
    const std::vector<int>& up(int c) const { return up_[c]; }
    // Cells of block (a, b), sorted by cell key.
    const std::vector<int>& block(int a, int b) const;

    // Test hook: negates the eta of one cover.
    void flip_eta(int cover) { covers_[cover].eta = -covers_[cover].eta; }

private:
    const Triangulation* T_ = nullptr;
    std::vector<Cell> cells_;
    std::map<std::pair<int, int>, int> index_;
    std::vector<Cover> covers_;
    std::vector<std::vector<int>> down_, up_;
    std::map<std::pair<int, int>, std::vector<int>> blocks_;
};

struct OmegaAudit {
    size_t intervals = 0;
    size_t violations = 0;
    std::vector<std::pair<int, int>> offending;  // (upper, lower) of bad intervals
};

// Every interval of dimension gap 2 must have exactly two midpoints with eta
// product -1.
OmegaAudit diamond_audit(const Omega& W);

}  // namespace tropdual
