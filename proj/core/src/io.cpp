#include "pavlab/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "pavlab/rational.hpp"
#include "pavlab/version.hpp"

namespace pavlab {

std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string int_str(const Int& v) { return v.get_str(); }

std::string float17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("rat_from_double: non-finite");
    Rat r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw ConfigError("empty rational literal");
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
        }
        return true;
    };
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) {
            throw ConfigError("bad rational literal: " + text);
        }
        Int num_i(num);
        Int den_i(den);
        if (den_i == 0) throw ConfigError("zero denominator: " + text);
        Rat r(num_i, den_i);
        r.canonicalize();
        return r;
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        if (!is_int(whole) || frac.empty() || !is_int(frac) || frac[0] == '-' ||
            frac[0] == '+') {
            throw ConfigError("bad decimal literal: " + text);
        }
        Int den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        Int num = Int(whole) * den;
        Int frac_num(frac);
        if (text[0] == '-') {
            num -= frac_num;
        } else {
            num += frac_num;
        }
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    if (!is_int(text)) throw ConfigError("bad integer literal: " + text);
    return Rat(Int(text));
}

uint64_t to_u64_checked(const Int& v, const char* what) {
    if (v < 0 || !v.fits_ulong_p()) {
        throw DomainError(std::string(what) + ": out of uint64 range");
    }
    return v.get_ui();
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string provenance_line(const Provenance& p) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "# config_hash=%016" PRIx64 " seed=%" PRIu64 " version=%s",
                  p.config_hash, p.seed,
                  p.version.empty() ? kVersion : p.version.c_str());
    return buf;
}

}  // namespace pavlab
