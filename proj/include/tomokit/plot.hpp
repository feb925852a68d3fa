#ifndef TOMOKIT_PLOT_HPP
#define TOMOKIT_PLOT_HPP

#include <string>

#include "tomokit/grid.hpp"
#include "tomokit/tomogram.hpp"

namespace tomokit {

// Static renderings as binary PPM (P6) images.  Fields become heatmaps
// (diverging blue-white-red for Wigner kind, white-to-black for classical);
// tomograms become overlaid row line plots.
void plot_field_heatmap(const std::string& path, const PhaseSpaceField& field,
                        int scale = 2);
void plot_tomogram_rows(const std::string& path, const Tomogram& tomogram,
                        int width = 800, int height = 480);

}  // namespace tomokit

#endif
