// Linearizes the bundled disk image with every 2D method and prints the
// path cost and mean value/radial autocorrelation over lags 1..32.

#include <cstdio>

#include "ddsfc/ddsfc.hpp"

int main(int argc, char** argv)
{
    using namespace ddsfc;
    const int side = argc > 1 ? std::atoi(argv[1]) : 64;
    const ScalarField field = synthetic::disks2d(side);
    std::printf("%-10s %12s %10s %10s\n", "method", "path cost", "value r", "radial r");
    for (Method m : {Method::Ours2d, Method::Hilbert, Method::Morton, Method::Scanline}) {
        GenParams p;
        p.method = m;
        const Generated g = generate(field, p);
        const auto s = linearize(g.field, g.curve);
        const int lag = std::min(32, static_cast<int>(s.values.size()) / 2);
        const double rv = mean_over_lags(normalized_autocorrelation(s.values, lag), 1, lag);
        const double rt = mean_over_lags(normalized_autocorrelation(s.radial, lag), 1, lag);
        std::printf("%-10s %12.4f %10.4f %10.4f\n", method_name(m).c_str(), path_cost(g.curve, g.field), rv, rt);
    }
}
