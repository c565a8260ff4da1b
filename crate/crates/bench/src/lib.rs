pub use dnl_core as core;
