//! Looming detection with a distributed presynaptic spatial-temporal filter.
//!
//! The detector turns a stream of luminance frames into a membrane potential
//! that rises sharply for objects on a collision course and stays quiet for
//! slowly translating objects, receding objects, and static scenes.
//!
//! - [`pipeline`] – the layered detector ([`Detector`], [`detector_step`]) and
//!   every individual layer as a free function.
//! - [`kernels`] – Gaussian kernels, the latency map, and the delay-partitioned
//!   inhibition bank.
//! - [`oracle`] – a literal-summation reference for the presynaptic layer.
//! - [`stimulus`] – synthetic looming / receding / translating scenes.
//! - [`analysis`] – attenuation, distinguish-ability, sharpness, sweeps.
//! - [`io`], [`config`], [`run`], [`bench`] – frame files, CSV reports,
//!   configuration, and the timing harness behind the `dlgmd` binary.
//!
//! ```
//! use dlgmd::{render_sequence, run_trace, Approach, Motion, Normalization, ParameterSet, SceneSpec};
//!
//! let scene = SceneSpec::new(64, 64, 30, Motion::Looming(Approach::default()));
//! let frames = render_sequence(&scene).unwrap();
//! let trace = run_trace(&frames, &ParameterSet::preset(7).unwrap(), Normalization::Offline, "demo").unwrap();
//! assert_eq!(trace.len(), 30);
//! ```

// `!(x > 0.0)` is deliberate throughout: it rejects NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod bench;
pub mod config;
mod conv;
pub mod error;
pub mod frame;
pub mod io;
pub mod kernels;
pub mod oracle;
pub mod params;
pub mod pipeline;
pub mod run;
pub mod state;
pub mod stimulus;

pub use analysis::{
    attenuation, contrast_ratio, distinguishability, run_trace, sharpness, CappedRatio, RunTrace,
};
pub use error::{Error, Result};
pub use frame::Frame;
pub use kernels::{gaussian_kernel, inhibition_bank, latency_at, InhibitionKernelBank, SpatialKernel};
pub use oracle::dpc_oracle;
pub use params::{LatencyQuantization, ParameterSet};
pub use pipeline::{detector_step, Detector, FrameReport, Kernels, LayerOutputs, Normalization};
pub use state::DetectorState;
pub use stimulus::{render_sequence, Approach, Motion, SceneSpec, Shape, Translation};
