// Plots three classifiers of increasing quality on the entropy triangle.
// Writes confusion_triangle.svg next to the working directory.

#include <cstdio>

#include "entri/entri.hpp"

int main() {
    using Counts = std::vector<std::vector<std::uint64_t>>;
    const std::vector<std::pair<std::string, Counts>> classifiers = {
        {"majority", {{40, 0, 0}, {35, 0, 0}, {25, 0, 0}}},
        {"noisy", {{28, 8, 4}, {6, 24, 5}, {5, 7, 13}}},
        {"sharp", {{39, 1, 0}, {2, 32, 1}, {0, 1, 24}}},
    };

    entri::PlotSpec spec;
    spec.title = "classifiers on the entropy triangle";

    std::printf("%-10s %8s %8s %8s\n", "name", "dH'", "2I'", "VI'");
    for (std::size_t i = 0; i < classifiers.size(); ++i) {
        const auto& [name, counts] = classifiers[i];
        const entri::CbetResult r = entri::cbet_from_confusion(counts);
        const entri::TriangleCoord& a = r.aggregate;
        std::printf("%-10s %8.4f %8.4f %8.4f\n", name.c_str(), a.delta_prime,
                    a.info_prime, a.vi_prime);
        spec.points.push_back({a, name, entri::Glyph::FilledCircle,
                               entri::kSeriesPalette[i]});
    }

    entri::write_text_file("confusion_triangle.svg", entri::render_svg(spec));
    std::printf("wrote confusion_triangle.svg\n");
    return 0;
}
