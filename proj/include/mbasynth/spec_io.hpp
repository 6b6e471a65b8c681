// Specification files: {"w": 32, "k": 2, "pairs": [{"in": ["0x..", ..], "out": "0x.."}]}
// Hex words are 0x-prefixed and zero-padded to ceil(w/4) digits on output;
// any 0x-prefixed hex value that fits in w bits is accepted on input.

#ifndef MBASYNTH_SPEC_IO_HPP
#define MBASYNTH_SPEC_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mbasynth/spec.hpp"

namespace mbasynth {

/// Malformed specification document (also used for suite records).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Unreadable or unwritable file.
class IoError : public Error {
public:
    using Error::Error;
};

std::string format_hex(Word value, BitWidth width);
/// Throws FormatError on a missing prefix, bad digits, or a value wider than w.
Word parse_hex(std::string_view text, BitWidth width);

nlohmann::ordered_json pairs_to_json(const Specification& spec);
nlohmann::ordered_json spec_to_json(const Specification& spec);
/// Throws FormatError, or ConfigError for an invalid specification.
Specification spec_from_json(const nlohmann::json& doc);

Specification parse_spec(std::string_view text);
Specification read_spec_file(const std::filesystem::path& path);
void write_spec_file(const std::filesystem::path& path, const Specification& spec);

}  // namespace mbasynth

#endif
