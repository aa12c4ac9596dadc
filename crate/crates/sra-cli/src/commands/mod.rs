pub mod fit;
pub mod report;
pub mod simulate;
pub mod stability;
