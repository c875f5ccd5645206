#!/usr/bin/env node
// Minimal SMT-LIB2 pipe: reads a script on stdin, evaluates it with the
// z3-solver WebAssembly build, prints the solver output on stdout.
//
//   npm install -g z3-solver
//   echo '(check-sat)' | node z3smt.js
'use strict';
const fs = require('fs');

function loadZ3() {
  try {
    return require('z3-solver');
  } catch (e) {
    const { execSync } = require('child_process');
    const path = require('path');
    const root = execSync('npm root -g').toString().trim();
    return require(path.join(root, 'z3-solver'));
  }
}

async function main() {
  const input = fs.readFileSync(0, 'utf8');
  const { init } = loadZ3();
  const { Z3 } = await init();
  const cfg = Z3.mk_config();
  const ctx = Z3.mk_context(cfg);
  Z3.del_config(cfg);
  try {
    const out = await Z3.eval_smtlib2_string(ctx, input);
    process.stdout.write(out);
  } catch (e) {
    process.stdout.write('unknown\n');
  }
  process.exit(0);
}

main();
