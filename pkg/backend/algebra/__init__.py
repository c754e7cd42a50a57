# Вычислительное ядро: кластерные алгебры, диаграммы Браттели, K0, A(1,1), Джонс
