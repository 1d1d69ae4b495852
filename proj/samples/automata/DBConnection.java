class DBConnection {
    class Monitor extends Automaton {
        final static Token OPEN =
            new Token() { public int getId() { return 1; } };
        final static Token CLOSE =
            new Token() { public int getId() { return 2; } };
        public Monitor() { }
    }
    Monitor m;
    public DBConnection() { m = new Monitor(); }
    public boolean isErroneous() { return ! m.accept(); }
    public void open() { m.transition(Monitor.OPEN); }
    public void close() { m.transition(Monitor.CLOSE); }
}
class CADsR extends Automaton {
    int init_state_backup;
    public CADsR() { init_state_backup = state; }
    public boolean accept(String str) {
        state = init_state_backup;
        transitions(convertToIterator(str));
        return accept();
}   }
