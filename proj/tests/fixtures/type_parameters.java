< A , B >
