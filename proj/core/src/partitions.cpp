#include "qseries/partitions.hpp"

#include <algorithm>
#include <stdexcept>

namespace qseries {

namespace {

void enumerate(int remaining, int max_part, DistinctPartition& acc,
               const std::function<void(const DistinctPartition&)>& fn) {
    if (remaining == 0) {
        fn(acc);
        return;
    }
    // largest available part first keeps the order lexicographically descending
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        // the remaining parts must fit strictly below `part`:
        // 1 + 2 + ... + (part-1) bounds what is still reachable
        if ((long)(part - 1) * part / 2 < remaining - part) continue;
        acc.parts.push_back(part);
        enumerate(remaining - part, part - 1, acc, fn);
        acc.parts.pop_back();
    }
}

} // namespace

void for_each_distinct_partition(
    int n, const std::function<void(const DistinctPartition&)>& fn) {
    if (n < 1) throw std::domain_error("distinct_partitions: n must be >= 1");
    DistinctPartition acc;
    enumerate(n, n, acc, fn);
}

std::vector<DistinctPartition> distinct_partitions(int n) {
    std::vector<DistinctPartition> out;
    for_each_distinct_partition(n, [&](const DistinctPartition& p) {
        out.push_back(p);
    });
    return out;
}

Scalar partition_divisor_sum(int n, int m, const Scalar& c) {
    if (n < 1) throw std::domain_error("partition_divisor_sum: n must be >= 1");
    if (m < 0) throw std::domain_error("partition_divisor_sum: m must be >= 0");
    Scalar total(0);
    for_each_distinct_partition(n, [&](const DistinctPartition& pi) {
        const int base = pi.largest() - pi.smallest();
        Scalar inner(0);
        for (int j = 1; j <= pi.smallest(); ++j) {
            long e = base + j;
            Int em;
            mpz_ui_pow_ui(em.get_mpz_t(), (unsigned long)e, (unsigned long)m);
            inner += Scalar(Rat(em)) * c.pow(e);
        }
        if (pi.count() % 2 == 0) total -= inner;
        else total += inner;
    });
    return total;
}

} // namespace qseries
