pub mod fixtures;
pub mod synthesis;
pub mod certificates;
pub mod direct_sum;
