#ifndef TOMOKIT_IO_HPP
#define TOMOKIT_IO_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/information.hpp"
#include "tomokit/tomogram.hpp"

namespace tomokit {

// Field container, little-endian:
//   32-byte header: magic "TOMO", version u32, n_q u32, n_p u32, kind u8,
//   zero padding;
//   then q_min, q_max, p_min, p_max as f64;
//   then n_q * n_p f64 values, row-major with the q index outer.
// A JSON sidecar (<path>.json) mirrors the header for human inspection.
void write_field(const std::string& path, const PhaseSpaceField& field,
                 bool json_sidecar = true);
PhaseSpaceField read_field(const std::string& path);

// Tomogram container, little-endian:
//   header: magic "TGRM", version u32, n_frames u32, n_x u32;
//   then x_min, x_max as f64;
//   then the frame list as (mu, nu) f64 pairs;
//   then n_frames * n_x f64 values, frame-major.
void write_tomogram(const std::string& path, const Tomogram& tomogram);
Tomogram read_tomogram(const std::string& path);

// CSV export with columns theta,x,w (theta is the canonical frame angle).
void write_tomogram_csv(const std::string& path, const Tomogram& tomogram);

// Frame-distribution CSV with columns theta,P (header line optional).
FrameDistribution read_frame_distribution_csv(const std::string& path);
void write_frame_distribution_csv(const std::string& path,
                                  const FrameDistribution& dist);

// Square matrix CSV (plain comma-separated rows).
Eigen::MatrixXd read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

}  // namespace tomokit

#endif
