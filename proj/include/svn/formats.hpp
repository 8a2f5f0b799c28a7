#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "svn/erm.hpp"
#include "svn/operator.hpp"

namespace svn {

// Shortest-faithful text form used in every emitted file: 17 significant
// digits round-trip a double exactly.
std::string fmt17(double value);

// "SVNOP v1" operator files.
void write_operator(std::ostream& out, const LinearOperator& t);
void write_operator_file(const std::string& path, const LinearOperator& t);
LinearOperator read_operator(std::istream& in);
LinearOperator read_operator_file(const std::string& path);

// "SVNDATA 1" dataset CSVs. Norm bounds are not stored in the format; the
// reader infers them as the max sample norms.
void write_dataset(std::ostream& out, const TrainingSet& data);
void write_dataset_file(const std::string& path, const TrainingSet& data);
TrainingSet read_dataset(std::istream& in);
TrainingSet read_dataset_file(const std::string& path);

// Flat `key = value` config files. '#' starts a comment; blank lines are
// skipped; duplicate or malformed lines are errors.
class Config {
public:
    static Config parse(std::istream& in);
    static Config parse_file(const std::string& path);

    // Throws ConfigError when a key outside the allowed set is present.
    void require_known(const std::set<std::string>& allowed) const;

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::vector<int> get_int_list(const std::string& key) const;

private:
    std::map<std::string, std::string> values_;
};

// Parses an order in [1, inf]; accepts "inf".
double parse_order(const std::string& text);

std::vector<int> parse_int_list(const std::string& text);

}  // namespace svn
