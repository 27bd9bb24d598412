// Estimates every cohort in a dataset and checks the closed form against the
// numerical fit.
//   cohort_report [dataset.csv|dataset.json]

#include "seroinv/seroinv.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
    using namespace seroinv;
    const std::filesystem::path path = argc > 1 ? argv[1] : SEROINV_SAMPLE_DATA "/age_cohorts.csv";
    try {
        const auto dataset = load_dataset(path, format_from_path(path));

        EstimateOptions options;
        options.oracle = true;
        const auto report = run_estimate(dataset, options);
        render_estimate_table(std::cout, report, kDefaultPrecision);

        std::cout << "\nreconstructed counts (closed form)\n";
        render_reconstruct(std::cout, run_reconstruct(dataset), 3, false);

        for (const auto& row : report.rows) {
            if (row.error || !row.oracle) continue;
            double gap = 0.0;
            const auto a = flatten(row.params), b = flatten(row.oracle->params);
            for (int c = 0; c < 7; ++c) gap = std::max(gap, std::abs(a[c] - b[c]));
            if (gap > 1e-3) {
                std::cout << row.label << ": fit differs from the closed form by " << gap
                          << " (closed form " << out_of_range_summary(row.validity) << " out of [0,1])\n";
            }
        }
        return report.any_error() ? 2 : 0;
    } catch (const std::exception& e) {
        std::cerr << "cohort_report: " << e.what() << '\n';
        return 1;
    }
}
