//! Quantum channels in Kraus form and their algebra.

pub mod channel;
pub mod ensemble;
pub mod ops;

pub use channel::{
    validate, validate_eb_parts, validate_kraus_ops, Channel, CptMap, EbChannel, KrausChannel, UnitaryChannel,
    ValidationReport,
};
pub use ensemble::ChannelEnsemble;
pub use ops::{
    apply, apply_extended, compose_sequential, compose_tensor, dilate, eb_to_kraus, kraus_images, random_channel,
};
