#include "drinfeld/config.hpp"

#include <fstream>
#include <sstream>

namespace drinfeld {

void RunConfig::set(const std::string& key, const std::string& value) {
    auto to_ll = [&](const std::string& v) { return std::stoll(v); };
    if (key == "p")
        p = static_cast<int>(to_ll(value));
    else if (key == "e0")
        e0 = static_cast<int>(to_ll(value));
    else if (key == "q") {
        // convenience: prime q sets p = q, e0 = 1
        p = static_cast<int>(to_ll(value));
        e0 = 1;
    } else if (key == "ram")
        ram = static_cast<int>(to_ll(value));
    else if (key == "prec")
        prec = to_ll(value);
    else if (key == "D")
        D = static_cast<int>(to_ll(value));
    else if (key == "D_ceiling")
        D_ceiling = static_cast<int>(to_ll(value));
    else if (key == "m_u")
        m_u = to_ll(value);
    else if (key == "N")
        N = value;
    else if (key == "seed")
        seed = std::stoull(value);
    else
        fail("ParseError", "unknown config key '" + key + "'");
    if (prec <= 0 || D > D_ceiling || ram < 1) fail("ParseError", "config violates prec>0, ram>=1, D<=D_ceiling");
}

RunConfig RunConfig::from_file(const std::string& path) {
    RunConfig cfg;
    std::ifstream in(path);
    if (!in) fail("ParseError", "cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string k = line.substr(0, eq), v = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            std::size_t a = s.find_first_not_of(" \t\r\n");
            std::size_t b = s.find_last_not_of(" \t\r\n");
            s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
        };
        trim(k);
        trim(v);
        if (!k.empty()) cfg.set(k, v);
    }
    return cfg;
}

void RunConfig::apply_overrides(const std::vector<std::string>& kvs) {
    for (const std::string& kv : kvs) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos) fail("ParseError", "override '" + kv + "' is not key=value");
        set(kv.substr(0, eq), kv.substr(eq + 1));
    }
}

std::string RunConfig::header(const Fq& F) const {
    std::ostringstream os;
    os << "# q=" << q() << " p=" << p << " e0=" << e0 << " modulus=[" << F.modulus_string() << "]\n";
    os << "# ram=" << ram << " prec=" << prec << " D=" << D << " D_ceiling=" << D_ceiling
       << " m_u=" << m_u << " N=[" << N << "] seed=" << seed << "\n";
    return os.str();
}

}  // namespace drinfeld
