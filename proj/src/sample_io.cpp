#include "amr/sample_io.hpp"

#include "amr/error.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace amr {

void write_samples(std::ostream& os, const ComplexSignal& signal) {
    const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
    os << signal.size() << ' ' << signal.rate_hz << '\n';
    for (const cplx& s : signal.samples) os << s.real() << ' ' << s.imag() << '\n';
    os.precision(old_precision);
}

ComplexSignal read_samples(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParameterError("samples: missing header line");
    std::istringstream header(line);
    std::size_t count = 0;
    double rate = 0.0;
    if (!(header >> count >> rate) || !(rate > 0.0)) throw ParameterError("samples: header must be 'N rate_hz'");
    ComplexSignal out{{}, rate};
    out.samples.reserve(count);
    while (out.samples.size() < count && std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        double re = 0.0, im = 0.0;
        if (!(row >> re >> im)) throw ParameterError("samples: bad line '" + line + "'");
        if (!std::isfinite(re) || !std::isfinite(im)) throw DataError("samples: non-finite value");
        out.samples.emplace_back(re, im);
    }
    if (out.samples.size() != count)
        throw ParameterError("samples: header announces " + std::to_string(count) + " values, found " +
                             std::to_string(out.samples.size()));
    return out;
}

void save_samples(const std::string& path, const ComplexSignal& signal) {
    std::ofstream os(path);
    if (!os) throw IoError(path, "cannot open for writing");
    write_samples(os, signal);
    if (!os) throw IoError(path, "write failed");
}

ComplexSignal load_samples(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError(path, "cannot open for reading");
    return read_samples(is);
}

} // namespace amr
