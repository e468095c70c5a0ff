pub mod exactnum;
pub mod manifolds;
pub mod symbolic;
pub mod toral;
