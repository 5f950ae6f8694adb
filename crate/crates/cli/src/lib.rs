//! Expression language, session store and property suites for the `nlfield`
//! command line tool.

pub mod expr;
pub mod session;
pub mod suites;
