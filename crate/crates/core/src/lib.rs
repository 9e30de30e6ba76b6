pub mod exact;
pub mod lp;
pub mod polyhedron;
pub mod setopt;
pub mod instances;
pub mod io;
