#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcdi/detector.hpp"
#include "bcdi/metrics.hpp"
#include "bcdi/phasing.hpp"

namespace bcdi::csv {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);
std::string format_number(std::uint64_t value);

/// Accumulates comma-separated rows. Cells are written verbatim; none of the
/// tables here contain commas or quotes.
class Table {
public:
    explicit Table(std::vector<std::string> header);

    Table& row(std::vector<std::string> cells);
    [[nodiscard]] std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// `pbf,positions,M,f,below_threshold,saturated`
std::string design_table(const std::vector<DesignCell>& cells);

/// `pbf,positions,slice_kind,mu,sigma,n_valid,floor`
std::string srtf_sweep(const std::vector<SrtfSweepRow>& rows);

/// `slice,mu,sigma,n_valid,floor`
std::string srtf_slices(const std::vector<SrtfReport>& reports);

/// `iteration,stage,error`
std::string error_history(const std::vector<ErrorRecord>& history);

} // namespace bcdi::csv
