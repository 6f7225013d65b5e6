pub mod games;
pub mod trees;
pub mod decomposition;
pub mod transduction;
pub mod lab;
pub mod automata;
pub mod io;
