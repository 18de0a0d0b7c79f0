pub mod encode;
pub mod state;
pub mod sweep;
pub mod verify;
pub mod wigner;
