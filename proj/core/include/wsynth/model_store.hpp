#pragma once

#include <string>

#include "wsynth/spectral.hpp"

namespace wsynth {

// Model directory layout: manifest.json plus raw little-endian float64
// tensors (row-major, dimensions declared in the manifest):
//   mu.bin               n_freq x 2p
//   sigma.bin            n_freq x 2p x 2p
//   ecdf_<id>.bin        sorted sample of each series
//   solar_profile_<id>.bin  8760 hourly means per solar series
void save_model(const SpectralModel& model, const std::string& dir);
SpectralModel load_model(const std::string& dir);

}  // namespace wsynth
