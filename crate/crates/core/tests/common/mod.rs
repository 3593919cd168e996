#![allow(dead_code)]

pub mod gen;
pub mod geom;
pub mod oracle;
