"""Blocks, dynamic links, and environment switching.

A block records one call's argument and local values plus a pointer to the
block of the defining environment, mirroring the owner's lexical parent
chain. Installing an environment walks structure and block chains upward in
lockstep, setting each structure's current-block slot and stopping as soon
as a link is already correct: once a pointer is right, all its ancestors are
too. Restoration replays the recorded old pointers in reverse, so the cost
of a switch is bounded by the lexical depth of the callee, never by the
dynamic call depth or the argument count.

Variable access reads one current-block slot after a fixed number of parent
hops; global access is a hash-table fetch. Everything is counted.
"""

from .errors import EvalError

# slot value for a local definition not yet evaluated (call-by-value lets)
UNSET = object()


class Block:
    __slots__ = ("owner", "slots", "parent")

    def __init__(self, owner, slots, parent):
        self.owner = owner
        self.slots = slots
        self.parent = parent  # block of the defining environment

    def __repr__(self):
        return f"<block of {self.owner.name}#{self.owner.uid}>"


class Counters:
    """Always-on cost tallies; all monotonically nondecreasing."""

    FIELDS = ("switch_tests", "switch_assignments", "blocks_allocated",
              "lookups", "thunks_created", "thunks_forced")

    __slots__ = FIELDS

    def __init__(self):
        for f in self.FIELDS:
            setattr(self, f, 0)

    def snapshot(self):
        return {f: getattr(self, f) for f in self.FIELDS}

    def delta(self, before):
        return {f: getattr(self, f) - before[f] for f in self.FIELDS}


class Runtime:
    """Mutable environment state of one interpreter instance (single-threaded
    by contract)."""

    def __init__(self, top_struct, counters, registry, debug_checks=False):
        self.top_struct = top_struct
        self.counters = counters
        self.registry = registry
        self.debug_checks = debug_checks
        # The top level is a pseudo-struct with one permanent block; its
        # named bindings live in a growable table because top-level names
        # are added at any time.
        self.top_block = Block(top_struct, [], None)
        counters.blocks_allocated += 1
        top_struct.current_block = self.top_block
        self.top_table = {}
        # test hook: called with (struct, tests, assignments) after each install
        self.install_observer = None

    def new_block(self, struct, args, defining_block):
        if len(args) != len(struct.params):
            raise EvalError(
                f"{struct.name}: expected {len(struct.params)} argument(s), "
                f"got {len(args)}", "arity")
        slots = list(args)
        if struct.local_names:
            slots.extend([UNSET] * len(struct.local_names))
        self.counters.blocks_allocated += 1
        return Block(struct, slots, defining_block)

    def install(self, struct, block):
        """Make `block` (and its ancestors) current for `struct` (and its
        ancestors); returns the log restore() needs. Stops early at the
        first already-correct link or at the top pseudo-struct."""
        if block.owner is not struct:
            raise EvalError("internal: block installed on the wrong structure",
                            "internal")
        c = self.counters
        top = self.top_struct
        log = []
        s, b = struct, block
        tests = 0
        while s is not top:
            tests += 1
            if s.current_block is b:
                break
            log.append((s, s.current_block))
            s.current_block = b
            s = s.parent
            b = b.parent
        c.switch_tests += tests
        c.switch_assignments += len(log)
        if self.install_observer is not None:
            self.install_observer(struct, tests, len(log))
        if self.debug_checks:
            self._assert_installed(struct, block)
            self._assert_coherent()
        return log

    def restore(self, log):
        """Undo one install exactly (strict LIFO discipline)."""
        for s, old in reversed(log):
            s.current_block = old
        if self.debug_checks:
            self._assert_coherent()

    def lookup(self, hops, offset, struct):
        """Constant-time variable access: `hops` parent links, one
        current-block read, one offset read."""
        s = struct
        for _ in range(hops):
            s = s.parent
        b = s.current_block
        if b is None:
            raise EvalError(f"internal: environment of {s.name} not installed",
                            "internal")
        assert 0 <= offset < len(b.slots)
        self.counters.lookups += 1
        return b.slots[offset]

    # -- debug-run assertions ------------------------------------------------

    def _assert_installed(self, struct, block):
        s, b = struct, block
        while s is not self.top_struct:
            assert s.current_block is b, \
                f"install left {s!r} pointing away from {b!r}"
            s = s.parent
            b = b.parent
        assert b is self.top_block

    def _assert_coherent(self):
        # whenever a structure's current block is set, it belongs to that
        # structure and its parent's current block is the matching ancestor
        top = self.top_struct
        for s in self.registry:
            b = s.current_block
            if s is top or b is None:
                continue
            assert b.owner is s
            if s.parent is not top:
                assert s.parent.current_block is b.parent, \
                    f"stale ancestor link above {s!r}"
