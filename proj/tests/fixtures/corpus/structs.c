/* local aggregates, typedefs, enums, labels */

int area_sum(int n) {
  struct rect {
    int w;
    int h;
  };
  struct rect boxes[4];
  int total = 0;
  for (int i = 0; i < 4; i++) {
    boxes[i].w = i + 1;
    boxes[i].h = n - i;
    total += boxes[i].w * boxes[i].h;
  }
  return total;
}

int state_machine(int input) {
  enum { IDLE = 0, BUSY = 1, DONE = 2 };
  int state = IDLE;
  typedef int step_t;
  step_t steps = 0;
retry:
  if (state == IDLE && input > 0) {
    state = BUSY;
    steps++;
    goto retry;
  }
  if (state == BUSY) {
    state = DONE;
    steps++;
  }
  return state == DONE ? steps : -1;
}

unsigned pack_pair(unsigned short hi, unsigned short lo) {
  union {
    unsigned whole;
    unsigned short half[2];
  } packer;
  packer.half[0] = lo;
  packer.half[1] = hi;
  return packer.whole;
}
