// Plans the dilemma room under both framings and prints each route.

#include <iostream>

#include "normpatrol/normpatrol.hpp"

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : NORMPATROL_SCENARIO_DIR "/dilemma.scn";
    const auto base = normpatrol::load_scenario(path);

    for (const char* config : {"deont", "util:ch=2", "util:ch=9"}) {
        const auto sc = normpatrol::apply_overrides(base, normpatrol::parse_config(config));
        const auto trace = normpatrol::run_scenario(sc);
        std::cout << config << ": success=" << trace.outcome.patrol_success
                  << " avoided=" << trace.outcome.people_avoided << " moves=" << trace.totals.movements
                  << " expansions=" << trace.totals.expansions_total << '\n'
                  << normpatrol::render_ascii(sc.map, trace) << '\n';
    }
}
