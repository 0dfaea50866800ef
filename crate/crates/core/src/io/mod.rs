//! Files, generators and rendering.

pub mod formats;
pub mod generate;
pub mod render;

pub use formats::{
    algorithm_trace_from_jsonl, algorithm_trace_to_jsonl, dynamics_trace_from_jsonl, dynamics_trace_to_jsonl,
    network_from_json, network_to_json, points_from_csv, points_to_csv, profile_from_json, profile_to_json,
    space_from_json, space_to_json, GraphFile,
};
pub use generate::{generate_instance, random_set_system, GadgetLayout, Instance, InstanceSpec};
pub use render::{render_dot, render_svg, Rendered, SvgStyle};
