#ifndef QSERIES_PARTITIONS_HPP
#define QSERIES_PARTITIONS_HPP

#include <functional>
#include <vector>

#include "qseries/scalar.hpp"

namespace qseries {

/* A partition into distinct parts, strictly decreasing. */
struct DistinctPartition {
    std::vector<int> parts;

    int count() const { return (int)parts.size(); }   // #(pi)
    int smallest() const { return parts.back(); }     // s(pi)
    int largest() const { return parts.front(); }     // l(pi)
};

/* Visits every partition of n into distinct parts exactly once, in
 * lexicographically descending order ([6], [5,1], [4,2], [3,2,1] for n=6). */
void for_each_distinct_partition(
    int n, const std::function<void(const DistinctPartition&)>& fn);

std::vector<DistinctPartition> distinct_partitions(int n);

/* sum over D(n) of (-1)^{#(pi)-1} sum_{j=1}^{s(pi)} (l-s+j)^m c^{l-s+j},
 * the partition side of the divisor-sum identities. */
Scalar partition_divisor_sum(int n, int m, const Scalar& c);

} // namespace qseries

#endif
