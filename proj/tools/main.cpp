#include "cli_app.hpp"

int main(int argc, char** argv)
{
    return affcurve::cli::run(argc, argv);
}
