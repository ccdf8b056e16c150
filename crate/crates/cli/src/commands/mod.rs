pub mod clf;
pub mod eval;
pub mod ingest;
pub mod lda;
pub mod split;
