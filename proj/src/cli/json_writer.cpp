#include <cmath>
#include <cstdio>

#include "stochsym/cli/cli.hpp"

namespace stochsym::cli {

namespace {

void emit(const nlohmann::json& j, int indent, std::string& out) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
                if (!first) out += ",\n";
                first = false;
                out += inner + nlohmann::json(it.key()).dump() + ": ";
                emit(it.value(), indent + 1, out);
            }
            out += "\n" + pad + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += inner;
                emit(j[i], indent + 1, out);
            }
            out += "\n" + pad + "]";
            return;
        }
        case nlohmann::json::value_t::number_float: {
            double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            return;
        }
        default: out += j.dump(); return;
    }
}

}  // namespace

std::string write_json(const nlohmann::json& j) {
    std::string out;
    emit(j, 0, out);
    out += "\n";
    return out;
}

}  // namespace stochsym::cli
