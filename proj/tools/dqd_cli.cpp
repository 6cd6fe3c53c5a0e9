// dqd - thermal correlations of a single electron in a double quantum dot
#include <dqd/cli.hpp>

int main(int argc, char** argv) {
    return dqd::cli_main(argc, argv);
}
