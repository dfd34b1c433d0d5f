// Writes a price CSV whose daily returns have N(0, sigma^2) marginals tied
// by a Gaussian copula. Dates run over weekdays from 2015-01-02.
//
//   make_synthetic [out.csv] [days] [rho] [seed]

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "qcopula/gaussian_copula.hpp"

namespace chr = std::chrono;

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : "synthetic_prices.csv";
    const std::size_t days = argc > 2 ? std::stoul(argv[2]) : 2001;
    const double rho = argc > 3 ? std::stod(argv[3]) : 0.6;
    const std::uint64_t seed = argc > 4 ? std::stoull(argv[4]) : 20240601;

    const auto u = qcopula::sample_gaussian_copula({rho}, days - 1, seed);
    const double sigma[2] = {0.015, 0.012};
    double price[2] = {100.0, 50.0};

    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot write " << path << '\n';
        return 1;
    }
    out << "date,SYNA,SYNB\n";
    chr::sys_days day = chr::year{2015} / chr::January / 2;
    char buf[96];
    for (std::size_t t = 0; t < days; ++t) {
        while (chr::weekday{day} == chr::Saturday || chr::weekday{day} == chr::Sunday) day += chr::days{1};
        if (t > 0) {
            for (int k = 0; k < 2; ++k) price[k] *= 1.0 + sigma[k] * qcopula::normal_quantile(u(t - 1, k));
        }
        const chr::year_month_day ymd{day};
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u,%.4f,%.4f\n", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), price[0], price[1]);
        out << buf;
        day += chr::days{1};
    }
    std::cout << "wrote " << days << " rows to " << path << '\n';
    return 0;
}
