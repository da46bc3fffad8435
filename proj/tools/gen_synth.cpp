// Regenerates the bundled synthetic datasets under data/. Run from the repo
// root: build/tools/gen_synth data
#include <iostream>
#include <string>

#include "rlab/dataset.hpp"

using namespace rlab;

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "data";
    try {
        for (int id = 1; id <= 5; ++id) {
            const DiscreteDistribution dist = builtin_distribution(id, 4, 7);
            const BitDataset big = sample_from_distribution(dist, 100, 1000 + id);
            write_csv(big, dir + "/synth" + std::to_string(id) + "_n100.csv");
            const BitDataset small = sample_from_distribution(dist, 20, 2000 + id);
            write_csv(small, dir + "/synth" + std::to_string(id) + "_n20.csv");
        }
        std::cout << "wrote bundled datasets to " << dir << "/\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
