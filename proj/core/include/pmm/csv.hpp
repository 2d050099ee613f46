#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace pmm {

// Numeric formatting shared by every artifact: 17 significant digits, enough
// to round-trip doubles, so reruns with one config are byte-comparable.
std::string fmt17(double v);
std::string fmt_int(long long v);

// Minimal CSV writer: a header row, then caller-assembled rows.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& fields);
    ~CsvWriter();

private:
    std::ofstream out_;
    std::size_t width_;
    std::string path_;
};

} // namespace pmm
