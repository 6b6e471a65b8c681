#include "mbasynth/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mbasynth {

std::string format_hex(Word value, BitWidth width) {
    const int digits = (width.bits() + 3) / 4;
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%0*llx", digits, static_cast<unsigned long long>(value & width.mask()));
    return buf;
}

Word parse_hex(std::string_view text, BitWidth width) {
    if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
        throw FormatError("expected 0x-prefixed hex word, got '" + std::string(text) + "'");
    }
    Word value = 0;
    for (char c : text.substr(2)) {
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        else throw FormatError("bad hex digit in '" + std::string(text) + "'");
        if ((value >> 60) != 0) throw FormatError("hex word '" + std::string(text) + "' exceeds 64 bits");
        value = (value << 4) | static_cast<Word>(digit);
    }
    if ((value & ~width.mask()) != 0) {
        throw FormatError("hex word '" + std::string(text) + "' exceeds " + std::to_string(width.bits()) + " bits");
    }
    return value;
}

nlohmann::ordered_json pairs_to_json(const Specification& spec) {
    auto pairs = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < spec.n(); ++i) {
        auto in = nlohmann::ordered_json::array();
        for (Word v : spec.input(i)) in.push_back(format_hex(v, spec.width()));
        nlohmann::ordered_json pair;
        pair["in"] = std::move(in);
        pair["out"] = format_hex(spec.outputs()[i], spec.width());
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

nlohmann::ordered_json spec_to_json(const Specification& spec) {
    nlohmann::ordered_json doc;
    doc["w"] = spec.width().bits();
    doc["k"] = spec.k();
    doc["pairs"] = pairs_to_json(spec);
    return doc;
}

Specification spec_from_json(const nlohmann::json& doc) {
    try {
        if (!doc.is_object()) throw FormatError("specification must be a JSON object");
        const BitWidth width(doc.value("w", 32));
        if (!doc.contains("k")) throw FormatError("specification lacks \"k\"");
        const int k = doc.at("k").get<int>();
        std::vector<IoPair> pairs;
        for (const auto& p : doc.at("pairs")) {
            IoPair pair;
            for (const auto& v : p.at("in")) pair.input.push_back(parse_hex(v.get<std::string>(), width));
            pair.output = parse_hex(p.at("out").get<std::string>(), width);
            pairs.push_back(std::move(pair));
        }
        return Specification(k, width, pairs);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed specification: ") + e.what());
    }
}

Specification parse_spec(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("specification is not valid JSON: ") + e.what());
    }
    return spec_from_json(doc);
}

Specification read_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

void write_spec_file(const std::filesystem::path& path, const Specification& spec) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << spec_to_json(spec).dump(2) << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace mbasynth
