pub mod analysis;
pub mod cantor;
pub mod census;
pub mod cli;
pub mod crosscheck;
pub mod digraph;
pub mod scheme;
pub mod semantics;
pub mod subst;
pub mod syntax;
