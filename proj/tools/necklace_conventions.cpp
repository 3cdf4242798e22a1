#include "necklace/conventions.hpp"

#include <fstream>
#include <iostream>

// Writes the bracket sign survey as markdown. Exit 1 when no sign choice works.
int main(int argc, char** argv)
{
    const auto survey = necklace::survey_conventions();
    const auto text = necklace::render_conventions_markdown(survey);
    if (argc > 1) {
        std::ofstream out(argv[1], std::ios::binary);
        if (!out) {
            std::cerr << "necklace-conventions: cannot write " << argv[1] << "\n";
            return 2;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return survey.chosen ? 0 : 1;
}
