#pragma once

#include <string>
#include <vector>

#include "leo/order.hpp"

namespace leo::nt {

enum class Independence { Independent, Dependent, Inconclusive };
const char* independence_name(Independence v);

struct IndependenceResult {
    Independence verdict = Independence::Inconclusive;
    unsigned precision_bits = 0;        // precision at which the verdict was reached
    std::vector<int> minor_columns;     // embeddings used by the certifying minor
    std::string minor_lo, minor_hi;     // enclosure of that minor, excludes 0
    std::vector<std::pair<std::string, std::string>> real_root_intervals;
    std::vector<long> relation;         // exponent vector with prod u_i^e_i torsion
    std::string note;
};

struct IndependenceOptions {
    unsigned start_bits = 64;
    unsigned max_bits = 4096;
    long relation_bound = 20;      // |e_i| in the relation search
    std::size_t relation_max_units = 4;
};

// Multiplicative independence of units modulo torsion. Independent verdicts are
// backed by an interval enclosure of a nonzero log-embedding minor; Dependent
// verdicts by an exact relation.
IndependenceResult units_independent(const std::vector<OrderElem>& units, const IndependenceOptions& opt = {});

// Exact torsion test: u^k = 1 for some k with phi(k) <= degree.
bool is_torsion(const OrderElem& u);

// Unit rank r1 + r2 - 1 of the order's fraction field.
int unit_rank(const MonogenicOrder& o);

}  // namespace leo::nt
