#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "coughkit/types.hpp"

namespace coughkit::ingest {

/// Anti-alias low-pass followed by subsampling. The filter is a 63-tap
/// linear-phase FIR with cutoff at 0.8x the new Nyquist; edges are
/// zero-padded and the group delay is compensated so t0 is preserved.
AudioSignal decimate(const AudioSignal& signal, int factor);

/// Sliding windows at t0 + k*hop, full windows only; the trailing
/// remainder is discarded. Lengths are resolved in whole samples.
std::vector<WindowSpan> frame_stream(double fs, double t0, std::size_t n_samples,
                                     double window_len_s, double hop_s);

AudioSignal slice(const AudioSignal& signal, const WindowSpan& span);
KinematicSignal slice(const KinematicSignal& signal, const WindowSpan& span);

/// WAV PCM 16-bit mono. Amplitudes are rescaled to [-1, 1].
AudioSignal load_wav(const std::string& path);
void save_wav(const std::string& path, const AudioSignal& signal);

/// CSV with header `t,ax,ay,az,yaw,pitch,roll`, one row per sample at a
/// fixed rate. Norm channels are computed on load.
KinematicSignal load_kinematic_csv(const std::string& path);
void save_kinematic_csv(const std::string& path, const KinematicSignal& signal);

/// JSON `{"events":[{"start":s,"end":s},...]}` with an optional
/// `"scenario"` tag.
AnnotationSet load_annotations(const std::string& path);
void save_annotations(const std::string& path, const AnnotationSet& annotations);

/// JSON `{"gender":0|1,"bmi":float}`.
SubjectMeta load_meta(const std::string& path);
void save_meta(const std::string& path, const SubjectMeta& meta);

struct Recording {
    AudioSignal audio;
    KinematicSignal kinematic;
    AnnotationSet annotations;
    SubjectMeta meta;
};

/// Loads and time-aligns one recording. Modality durations differing by
/// more than 1 s raise ParseError.
Recording load_recording(const std::string& audio_path, const std::string& imu_path,
                         const std::string& annotation_path, const SubjectMeta& meta);

}  // namespace coughkit::ingest
