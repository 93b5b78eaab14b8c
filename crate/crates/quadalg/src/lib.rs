pub mod field;
pub mod linalg;
pub mod verify;
pub mod quadform;
pub mod composition;
pub mod tensoralg;
pub mod jordan;
pub mod jmodule;
pub mod quadrangular;
pub mod moufang;
pub mod cli;
