# Tools package

