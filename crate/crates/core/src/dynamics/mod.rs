//! The map `x -> L<a>(x)`: its fixed point, 2-cycles and the class of the
//! orbit `10, a, a_a, a_a_a, ...`.

mod cobweb;
mod cycle;
mod fixed;
mod scan;
mod stepper;
mod trajectory;

pub use cobweb::{cobweb_points, Cobweb, Segment};
pub use cycle::{two_cycle, TwoCycle};
pub use fixed::{classify_fixed_point, fixed_point, FixedPointResult, LocalClass};
pub use scan::{class_scan, class_scan_values, ClassScanRow, MAX_SCAN_POINTS};
pub use trajectory::{
    trajectory, PrecisionPolicy, TrajectoryClass, TrajectoryOptions, TrajectoryReport, Witness,
};
