//! Template tilings: fractional weights, the guaranteed search on link
//! instances, tight-path extraction, integral template packing and the
//! rounding from fractional to integral coverage.

pub mod fractional;
pub mod l29_search;
pub mod loose_tiling;
pub mod mtiling;
pub mod rounding;
pub mod tight;
